//! Gradient descent on the discrete energy `λ·mass + E_p` with frozen nodes,
//! plus the canned inpainting and four-petal comparison scenarios.

mod scenarios;

pub use scenarios::{
    bm_compare, inpaint_scenario, BmReport, CandidateResult, InpaintOptions, InpaintReport,
};

use crate::curve::{edge_lengths_of, turning_angle, validate_nodes, DiscreteCurve};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::varifold::{CurveSystem, EnergyReport};
use serde::{Deserialize, Serialize};

/// Smoothing angle for `p < 2`.
pub const SMOOTHING: f64 = 1e-6;

/// Node positions of every curve of a system.
type Nodes = Vec<Vec<Vec2>>;

/// Region where nodes are free; everything else is frozen.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClampRegion {
    #[serde(default)]
    pub discs: Vec<Disc>,
    /// Rectangles as `[x0, y0, x1, y1]`.
    #[serde(default)]
    pub rects: Vec<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: Vec2,
    pub radius: f64,
}

impl ClampRegion {
    pub fn contains(&self, p: Vec2) -> bool {
        self.discs.iter().any(|d| (p - d.center).norm() < d.radius)
            || self
                .rects
                .iter()
                .any(|r| p.x > r[0] && p.x < r[2] && p.y > r[1] && p.y < r[3])
    }
}

/// Per-curve mask of frozen nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub frozen: Vec<Vec<bool>>,
}

impl ConstraintSet {
    pub fn free(system: &CurveSystem) -> Self {
        ConstraintSet {
            frozen: system
                .curves()
                .iter()
                .map(|c| vec![false; c.len()])
                .collect(),
        }
    }

    pub fn all_frozen(system: &CurveSystem) -> Self {
        ConstraintSet {
            frozen: system
                .curves()
                .iter()
                .map(|c| vec![true; c.len()])
                .collect(),
        }
    }

    /// Nodes inside `region` are free, the rest frozen.
    pub fn from_region(system: &CurveSystem, region: &ClampRegion) -> Self {
        ConstraintSet {
            frozen: system
                .curves()
                .iter()
                .map(|c| c.nodes().iter().map(|p| !region.contains(*p)).collect())
                .collect(),
        }
    }

    pub fn check(&self, system: &CurveSystem) -> Result<()> {
        let ok = self.frozen.len() == system.curves().len()
            && self
                .frozen
                .iter()
                .zip(system.curves())
                .all(|(m, c)| m.len() == c.len());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "freeze mask does not match the curve system".into(),
            ))
        }
    }

    pub fn free_count(&self) -> usize {
        self.frozen.iter().flatten().filter(|f| !**f).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub p: f64,
    pub lambda: f64,
    pub max_iters: usize,
    pub grad_tol: f64,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
    /// Rejected trial steps in a row before giving up.
    pub max_rejections: usize,
    /// Iterations between redistributions of free nodes (0 disables).
    pub resample_every: usize,
}

impl SolveOptions {
    pub fn new(p: f64, lambda: f64) -> Self {
        SolveOptions {
            p,
            lambda,
            max_iters: 20000,
            grad_tol: 1e-8,
            armijo: 1e-4,
            max_rejections: 20,
            resample_every: 50,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.p > 1.0) || !self.p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "p must be > 1, got {}",
                self.p
            )));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {}",
                self.lambda
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    /// Too many rejected steps in a row; the best iterate is returned.
    Stalled,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iter: usize,
    pub energy: f64,
    pub grad_norm: f64,
    pub step: f64,
    /// Free nodes were redistributed after this step; `energy` is the value
    /// after redistribution.
    pub resampled: bool,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub system: CurveSystem,
    pub report: EnergyReport,
    pub trace: Vec<TraceRow>,
    pub status: SolveStatus,
    pub iterations: usize,
}

fn bending_density(phi: f64, p: f64) -> (f64, f64) {
    if p < 2.0 {
        let d2 = SMOOTHING * SMOOTHING;
        let q = phi * phi + d2;
        (
            q.powf(0.5 * p) - SMOOTHING.powf(p),
            p * phi * q.powf(0.5 * p - 1.0),
        )
    } else {
        let a = phi.abs();
        (a.powf(p), p * a.powf(p - 1.0) * phi.signum())
    }
}

/// Energy minimized by the solver: `λ·Σ|e| + Σ f(φ)/ℓ^{p-1}` per curve times
/// its weight, with `f(φ) = |φ|^p` for `p >= 2` and the smoothed
/// `(φ²+δ²)^{p/2} - δ^p` for `p < 2`.
pub fn solver_energy_of(nodes: &[Vec2], weight: u32, p: f64, lambda: f64) -> f64 {
    let n = nodes.len();
    let lens = edge_lengths_of(nodes);
    let mut e = lambda * lens.iter().sum::<f64>();
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let phi = turning_angle(nodes[i] - nodes[prev], nodes[(i + 1) % n] - nodes[i]);
        let l = 0.5 * (lens[prev] + lens[i]);
        e += bending_density(phi, p).0 / l.powf(p - 1.0);
    }
    weight as f64 * e
}

pub fn solver_energy(system: &CurveSystem, p: f64, lambda: f64) -> f64 {
    system
        .curves()
        .iter()
        .map(|c| solver_energy_of(c.nodes(), c.weight(), p, lambda))
        .sum()
}

/// Exact gradient of [`solver_energy_of`] with respect to every node.
pub fn gradient_of(nodes: &[Vec2], weight: u32, p: f64, lambda: f64) -> Vec<Vec2> {
    let n = nodes.len();
    let w = weight as f64;
    let mut g = vec![Vec2::ZERO; n];
    for i in 0..n {
        let next = (i + 1) % n;
        let e = nodes[next] - nodes[i];
        let u = e / e.norm() * (w * lambda);
        g[next] += u;
        g[i] -= u;
    }
    for i in 0..n {
        let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
        let a = nodes[i] - nodes[prev];
        let b = nodes[next] - nodes[i];
        let (la, lb) = (a.norm(), b.norm());
        let phi = turning_angle(a, b);
        let l = 0.5 * (la + lb);
        let (f, df) = bending_density(phi, p);
        let d_phi = w * df / l.powf(p - 1.0);
        let d_len = -w * (p - 1.0) * f / l.powf(p);
        let ga = a.perp() * (-d_phi / (la * la)) + a * (0.5 * d_len / la);
        let gb = b.perp() * (d_phi / (lb * lb)) + b * (0.5 * d_len / lb);
        g[i] += ga - gb;
        g[prev] -= ga;
        g[next] += gb;
    }
    g
}

/// Per-curve, per-node gradient of the solver energy. Frozen nodes are not
/// masked here.
pub fn discrete_gradient(system: &CurveSystem, p: f64, lambda: f64) -> Result<Vec<Vec<Vec2>>> {
    SolveOptions::new(p, lambda).validate()?;
    Ok(system
        .curves()
        .iter()
        .map(|c| gradient_of(c.nodes(), c.weight(), p, lambda))
        .collect())
}

fn masked_norm(g: &[Vec<Vec2>], frozen: &[Vec<bool>]) -> f64 {
    g.iter()
        .zip(frozen)
        .flat_map(|(gc, fc)| {
            gc.iter()
                .zip(fc)
                .filter(|(_, f)| !**f)
                .map(|(v, _)| v.x.abs().max(v.y.abs()))
        })
        .fold(0.0, f64::max)
}

/// Gradient descent with Armijo backtracking on the free nodes.
///
/// Each line search starts from the two-point (Barzilai-Borwein) step
/// `|s|²/⟨s, y⟩` of the last accepted move, or from twice the last accepted
/// step when that is undefined, and halves on every rejection;
/// `max_rejections` rejections in a row end the run with
/// [`SolveStatus::Stalled`]. Every `resample_every` iterations the free runs
/// of each curve are redistributed at equal arclength. Energy is
/// nonincreasing across every accepted step; a redistribution may raise it
/// by a discretization-sized amount.
pub fn minimize(
    system: &CurveSystem,
    constraints: &ConstraintSet,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    opts.validate()?;
    constraints.check(system)?;
    let (p, lambda) = (opts.p, opts.lambda);
    let weights: Vec<u32> = system.curves().iter().map(|c| c.weight()).collect();
    let mut x: Vec<Vec<Vec2>> = system.curves().iter().map(|c| c.nodes().to_vec()).collect();
    let energy = |x: &[Vec<Vec2>]| -> f64 {
        x.iter()
            .zip(&weights)
            .map(|(n, w)| solver_energy_of(n, *w, p, lambda))
            .sum()
    };
    let mut e = energy(&x);
    let mut trace = vec![TraceRow {
        iter: 0,
        energy: e,
        grad_norm: f64::NAN,
        step: 0.0,
        resampled: false,
    }];
    let mut status = SolveStatus::MaxIterations;
    let mut iterations = 0;
    let mut step = f64::NAN;
    let mut rejections = 0;
    // previous iterate and gradient for the two-point step length
    let mut last: Option<(Nodes, Nodes)> = None;

    if constraints.free_count() == 0 {
        trace[0].grad_norm = 0.0;
        return finish(system, x, trace, SolveStatus::Converged, 0, p, lambda);
    }

    while iterations < opts.max_iters {
        let g: Vec<Vec<Vec2>> = x
            .iter()
            .zip(&weights)
            .map(|(n, w)| gradient_of(n, *w, p, lambda))
            .collect();
        let gnorm = masked_norm(&g, &constraints.frozen);
        trace.last_mut().unwrap().grad_norm = gnorm;
        if gnorm < opts.grad_tol {
            status = SolveStatus::Converged;
            break;
        }
        let g2: f64 = g
            .iter()
            .zip(&constraints.frozen)
            .flat_map(|(gc, fc)| {
                gc.iter()
                    .zip(fc)
                    .filter(|(_, f)| !**f)
                    .map(|(v, _)| v.norm_sq())
            })
            .sum();
        if step.is_nan() {
            let h = x
                .iter()
                .flat_map(|n| edge_lengths_of(n))
                .fold(f64::INFINITY, f64::min);
            step = 0.1 * h / gnorm;
        }
        if let Some((x0, g0)) = last.take() {
            let (mut ss, mut sy) = (0.0, 0.0);
            for (((xc, x0c), (gc, g0c)), fc) in x
                .iter()
                .zip(&x0)
                .zip(g.iter().zip(&g0))
                .zip(&constraints.frozen)
            {
                for i in 0..xc.len() {
                    if !fc[i] {
                        let d = xc[i] - x0c[i];
                        ss += d.norm_sq();
                        sy += d.dot(gc[i] - g0c[i]);
                    }
                }
            }
            if sy > 0.0 && ss > 0.0 {
                step = ss / sy;
            }
        }
        let mut accepted = None;
        while rejections < opts.max_rejections {
            let trial: Vec<Vec<Vec2>> = x
                .iter()
                .zip(&g)
                .zip(&constraints.frozen)
                .map(|((n, gc), fc)| {
                    n.iter()
                        .zip(gc)
                        .zip(fc)
                        .map(|((p, d), f)| if *f { *p } else { *p - *d * step })
                        .collect()
                })
                .collect();
            if trial.iter().all(|n| validate_nodes(n).is_ok()) {
                let et = energy(&trial);
                if et <= e - opts.armijo * step * g2 {
                    accepted = Some((trial, et));
                    break;
                }
            }
            step *= 0.5;
            rejections += 1;
        }
        let Some((trial, et)) = accepted else {
            status = SolveStatus::Stalled;
            break;
        };
        rejections = 0;
        last = Some((std::mem::replace(&mut x, trial), g));
        e = et;
        iterations += 1;
        trace.push(TraceRow {
            iter: iterations,
            energy: e,
            grad_norm: f64::NAN,
            step,
            resampled: false,
        });
        step *= 2.0;
        if opts.resample_every > 0 && iterations % opts.resample_every == 0 {
            let y: Vec<Vec<Vec2>> = x
                .iter()
                .zip(&constraints.frozen)
                .map(|(n, f)| redistribute(n, f).unwrap_or_else(|| n.clone()))
                .collect();
            if y.iter().all(|n| validate_nodes(n).is_ok()) {
                x = y;
                e = energy(&x);
                last = None;
                let row = trace.last_mut().unwrap();
                row.energy = e;
                row.resampled = true;
            }
        }
    }
    if trace.last().unwrap().grad_norm.is_nan() {
        let g: Vec<Vec<Vec2>> = x
            .iter()
            .zip(&weights)
            .map(|(n, w)| gradient_of(n, *w, p, lambda))
            .collect();
        trace.last_mut().unwrap().grad_norm = masked_norm(&g, &constraints.frozen);
    }
    finish(system, x, trace, status, iterations, p, lambda)
}

fn finish(
    system: &CurveSystem,
    x: Vec<Vec<Vec2>>,
    trace: Vec<TraceRow>,
    status: SolveStatus,
    iterations: usize,
    p: f64,
    lambda: f64,
) -> Result<SolveResult> {
    let curves = x
        .into_iter()
        .zip(system.curves())
        .map(|(n, c)| DiscreteCurve::new(n, c.weight()))
        .collect::<Result<Vec<_>>>()?;
    let system = CurveSystem::new(curves)?;
    let report = system.energy_report(p, lambda)?;
    Ok(SolveResult {
        system,
        report,
        trace,
        status,
        iterations,
    })
}

/// Moves the free nodes of each maximal free run to equal arclength spacing
/// along the current polyline between the bounding frozen nodes. A curve
/// without frozen nodes is resampled as a whole. Frozen nodes are untouched.
fn redistribute(nodes: &[Vec2], frozen: &[bool]) -> Option<Vec<Vec2>> {
    let n = nodes.len();
    let Some(anchor) = (0..n).find(|&i| frozen[i]) else {
        let c = DiscreteCurve::from_nodes(nodes.to_vec()).ok()?;
        return Some(c.resample_arclength(n).ok()?.nodes().to_vec());
    };
    let mut out = nodes.to_vec();
    let mut k = 0;
    while k < n {
        let i = (anchor + k) % n;
        if !frozen[i] {
            k += 1;
            continue;
        }
        // run of free nodes after frozen node i
        let mut m = 0;
        while m + 1 < n && !frozen[(i + m + 1) % n] {
            m += 1;
        }
        if m > 0 {
            let path: Vec<Vec2> = (0..=m + 1).map(|j| nodes[(i + j) % n]).collect();
            let cum: Vec<f64> = std::iter::once(0.0)
                .chain(path.windows(2).scan(0.0, |acc, w| {
                    *acc += (w[1] - w[0]).norm();
                    Some(*acc)
                }))
                .collect();
            let total = *cum.last().unwrap();
            let mut seg = 0;
            for j in 1..=m {
                let s = total * j as f64 / (m + 1) as f64;
                while seg + 1 < cum.len() - 1 && cum[seg + 1] < s {
                    seg += 1;
                }
                let len = cum[seg + 1] - cum[seg];
                let t = if len > 0.0 { (s - cum[seg]) / len } else { 0.0 };
                out[(i + j) % n] = path[seg].lerp(path[seg + 1], t);
            }
        }
        k += m + 1;
    }
    Some(out)
}
