//! Elastic energies of systems of closed planar curves treated as varifolds.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curve;
pub mod error;
pub mod generators;
pub mod geom;
pub mod graphcheck;
pub mod io;
pub mod relaxsolve;
pub mod varifold;
pub mod winding;

pub use curve::{CurvatureProfile, DiscreteCurve};
pub use error::{Error, Result};
pub use geom::{BBox, Vec2};
pub use varifold::{CurveSystem, EnergyReport, MonotonicityProfile, Verdict};
