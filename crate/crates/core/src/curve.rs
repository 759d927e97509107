//! Closed discrete curves: length, turning-angle curvature and p-elastic energies.
//!
//! Curvature lives at nodes. The signed turning angle `φᵢ` between the incoming
//! and outgoing edges is spread over the dual length `ℓᵢ = (|eᵢ₋₁| + |eᵢ|)/2`,
//! so `κᵢ = φᵢ/ℓᵢ` and `∫|κ|^p ds ≈ Σ |φᵢ|^p / ℓᵢ^{p-1}`.

use crate::error::{Error, Result};
use crate::geom::{BBox, Vec2};
use std::f64::consts::PI;

/// Minimum node count of a valid curve.
pub const MIN_NODES: usize = 8;
/// Smallest admissible edge length, relative to the bounding-box diagonal.
pub const EPS_GEOM_REL: f64 = 1e-9;
/// A turning angle may not come closer than this to a full reversal.
pub const EPS_ANGLE: f64 = 1e-6;
/// Turning angle above which an isolated spike is treated as a corner.
pub const CORNER_ANGLE: f64 = 0.2;

/// Closed polyline with an integer multiplicity. The last node connects back
/// to the first one.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteCurve {
    nodes: Vec<Vec2>,
    weight: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureProfile {
    /// Signed curvature per node, positive for counterclockwise turning.
    pub curvature: Vec<f64>,
    pub dual_length: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningNumber {
    pub index: i64,
    /// Distance of `Σφ/2π` from the nearest integer.
    pub residual: f64,
    pub reliable: bool,
}

/// Signed angle from `a` to `b` in `(-π, π]`.
pub fn turning_angle(a: Vec2, b: Vec2) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

/// Signed turning angles of a closed polyline given as raw node positions.
pub fn turning_angles_of(nodes: &[Vec2]) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|i| {
            let prev = nodes[(i + n - 1) % n];
            let next = nodes[(i + 1) % n];
            turning_angle(nodes[i] - prev, next - nodes[i])
        })
        .collect()
}

/// Edge `i` runs from node `i` to node `i+1`.
pub fn edge_lengths_of(nodes: &[Vec2]) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|i| (nodes[(i + 1) % n] - nodes[i]).norm())
        .collect()
}

pub fn dual_lengths_of(nodes: &[Vec2]) -> Vec<f64> {
    let e = edge_lengths_of(nodes);
    let n = e.len();
    (0..n).map(|i| 0.5 * (e[(i + n - 1) % n] + e[i])).collect()
}

/// `Σ |φᵢ|^p / ℓᵢ^{p-1}` for raw node positions, no validation.
pub fn elastic_energy_of(nodes: &[Vec2], p: f64) -> f64 {
    let phi = turning_angles_of(nodes);
    let ell = dual_lengths_of(nodes);
    phi.iter()
        .zip(&ell)
        .map(|(f, l)| f.abs().powf(p) / l.powf(p - 1.0))
        .sum()
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "exponent p must be >= 1, got {p}"
        )));
    }
    Ok(())
}

impl DiscreteCurve {
    /// Builds a validated curve.
    pub fn new(nodes: Vec<Vec2>, weight: u32) -> Result<Self> {
        let c = DiscreteCurve { nodes, weight };
        c.validate()?;
        Ok(c)
    }

    pub fn from_nodes(nodes: Vec<Vec2>) -> Result<Self> {
        Self::new(nodes, 1)
    }

    /// Checks node count, edge lengths, reversals and finiteness.
    pub fn validate(&self) -> Result<()> {
        validate_nodes(&self.nodes)?;
        if self.weight == 0 {
            return Err(Error::InvalidCurve("weight must be positive".into()));
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Vec2] {
        &self.nodes
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn with_weight(mut self, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(Error::InvalidCurve("weight must be positive".into()));
        }
        self.weight = weight;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.nodes).expect("validated curve has nodes")
    }

    /// Edge length threshold for this curve.
    pub fn eps_geom(&self) -> f64 {
        EPS_GEOM_REL * self.bbox().diagonal()
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        edge_lengths_of(&self.nodes)
    }

    pub fn turning_angles(&self) -> Vec<f64> {
        turning_angles_of(&self.nodes)
    }

    pub fn dual_lengths(&self) -> Vec<f64> {
        dual_lengths_of(&self.nodes)
    }

    /// Unit tangent of edge `i`.
    pub fn edge_tangent(&self, i: usize) -> Vec2 {
        let n = self.nodes.len();
        (self.nodes[(i + 1) % n] - self.nodes[i]).normalized()
    }

    /// Unit normal at node `i`: the left normal of the bisecting tangent.
    pub fn node_normal(&self, i: usize) -> Vec2 {
        let n = self.nodes.len();
        let a = self.edge_tangent((i + n - 1) % n);
        let b = self.edge_tangent(i);
        let t = a + b;
        if t.norm() < 1e-300 {
            a.perp()
        } else {
            t.normalized().perp()
        }
    }

    pub fn curvature_profile(&self) -> CurvatureProfile {
        let phi = self.turning_angles();
        let dual_length = self.dual_lengths();
        let curvature = phi.iter().zip(&dual_length).map(|(f, l)| f / l).collect();
        CurvatureProfile {
            curvature,
            dual_length,
        }
    }

    pub fn length(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    /// `∫|k|^p ds` in its discrete form `Σ |φᵢ|^p / ℓᵢ^{p-1}`.
    pub fn elastic_energy(&self, p: f64) -> Result<f64> {
        check_exponent(p)?;
        Ok(elastic_energy_of(&self.nodes, p))
    }

    /// `λ·L + E_p`.
    pub fn total_energy(&self, p: f64, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {lambda}"
            )));
        }
        Ok(lambda * self.length() + self.elastic_energy(p)?)
    }

    /// `Σ|φᵢ|`; at least `2π` for every closed polyline.
    pub fn total_absolute_curvature(&self) -> f64 {
        self.turning_angles().iter().map(|f| f.abs()).sum()
    }

    pub fn turning_number(&self) -> TurningNumber {
        let total: f64 = self.turning_angles().iter().sum::<f64>() / (2.0 * PI);
        let index = total.round();
        let residual = (total - index).abs();
        TurningNumber {
            index: index as i64,
            residual,
            reliable: residual <= 0.1,
        }
    }

    /// True when every turning angle has the same sign (up to `EPS_ANGLE`).
    pub fn has_constant_turning_sign(&self) -> bool {
        let phi = self.turning_angles();
        let pos = phi.iter().any(|&f| f > EPS_ANGLE);
        let neg = phi.iter().any(|&f| f < -EPS_ANGLE);
        !(pos && neg)
    }

    /// Nodes whose turning is an isolated spike: above `theta` and more than
    /// four times the turning of either neighbour. Turning that comes from a
    /// sampled smooth arc is spread evenly over neighbouring nodes and halves
    /// under refinement, so it never qualifies.
    pub fn corner_nodes(&self, theta: f64) -> Vec<usize> {
        let phi = self.turning_angles();
        let n = phi.len();
        (0..n)
            .filter(|&i| {
                let f = phi[i].abs();
                let nb = phi[(i + n - 1) % n].abs().max(phi[(i + 1) % n].abs());
                f > theta && f > 4.0 * nb
            })
            .collect()
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        DiscreteCurve::new(self.nodes.iter().map(|&p| p * s).collect(), self.weight)
    }

    pub fn rigid_motion(&self, angle: f64, shift: Vec2) -> Result<Self> {
        DiscreteCurve::new(
            self.nodes
                .iter()
                .map(|&p| p.rotated(angle) + shift)
                .collect(),
            self.weight,
        )
    }

    pub fn reversed(&self) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        DiscreteCurve {
            nodes,
            weight: self.weight,
        }
    }

    /// Same closed curve starting at node `k`.
    pub fn rotated_start(&self, k: usize) -> Self {
        let mut nodes = self.nodes.clone();
        let n = nodes.len();
        nodes.rotate_left(k % n);
        DiscreteCurve {
            nodes,
            weight: self.weight,
        }
    }

    /// Resamples to `n` nodes with equal spacing along the input polyline,
    /// starting at node 0. All output edges have the same chord length; when
    /// the input is already equally spaced and `n` is a multiple of its node
    /// count, every input node is reproduced and the length is unchanged.
    pub fn resample_arclength(&self, n: usize) -> Result<Self> {
        self.validate()?;
        if n < MIN_NODES {
            return Err(Error::InvalidParameter(format!(
                "resample target must have at least {MIN_NODES} nodes, got {n}"
            )));
        }
        let nodes = equal_chord_resample(&self.nodes, n)?;
        DiscreteCurve::new(nodes, self.weight)
    }
}

pub(crate) fn validate_nodes(nodes: &[Vec2]) -> Result<()> {
    if nodes.len() < MIN_NODES {
        return Err(Error::InvalidCurve(format!(
            "curve has {} nodes, at least {MIN_NODES} required",
            nodes.len()
        )));
    }
    if let Some(i) = nodes.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidCurve(format!("node {i} is not finite")));
    }
    let diag = BBox::of_points(nodes).map(|b| b.diagonal()).unwrap_or(0.0);
    if diag <= 0.0 {
        return Err(Error::InvalidCurve("all nodes coincide".into()));
    }
    let eps = EPS_GEOM_REL * diag;
    for (i, l) in edge_lengths_of(nodes).iter().enumerate() {
        if *l <= eps {
            return Err(Error::InvalidCurve(format!(
                "edge {i} has length {l:e}, below {eps:e}"
            )));
        }
    }
    for (i, f) in turning_angles_of(nodes).iter().enumerate() {
        if f.abs() >= PI - EPS_ANGLE {
            return Err(Error::InvalidCurve(format!(
                "node {i} reverses direction (turning angle {f})"
            )));
        }
    }
    Ok(())
}

/// Arclength position reached after `n` chord steps of length `h`,
/// together with the visited points.
fn chord_walk(nodes: &[Vec2], cum: &[f64], h: f64, n: usize, keep: bool) -> (f64, Vec<Vec2>) {
    let m = nodes.len();
    let total = cum[m];
    let mut pts = Vec::with_capacity(if keep { n } else { 0 });
    let mut q = nodes[0];
    // current segment (unwrapped index) and parameter on it
    let mut seg = 0usize;
    let mut t0 = 0.0;
    if keep {
        pts.push(q);
    }
    let limit = 3 * m + 3;
    for step in 0..n {
        loop {
            if seg >= limit {
                return (f64::INFINITY, pts);
            }
            let a = nodes[seg % m];
            let b = nodes[(seg + 1) % m];
            let d = b - a;
            let f = a - q;
            let qa = d.norm_sq();
            let qb = 2.0 * f.dot(d);
            let qc = f.norm_sq() - h * h;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= 0.0 {
                let t = (-qb + disc.sqrt()) / (2.0 * qa);
                if t >= t0 && t <= 1.0 {
                    q = a + d * t;
                    t0 = t;
                    break;
                }
            }
            seg += 1;
            t0 = 0.0;
        }
        if keep && step + 1 < n {
            pts.push(q);
        }
    }
    let wraps = (seg / m) as f64 * total;
    let seg_len = cum[seg % m + 1] - cum[seg % m];
    (wraps + cum[seg % m] + t0 * seg_len, pts)
}

fn equal_chord_resample(nodes: &[Vec2], n: usize) -> Result<Vec<Vec2>> {
    let m = nodes.len();
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    for l in edge_lengths_of(nodes) {
        cum.push(cum.last().unwrap() + l);
    }
    let total = cum[m];
    let mut hi = total / n as f64;
    let mut lo = 0.5 * hi;
    let mut tries = 0;
    while chord_walk(nodes, &cum, lo, n, false).0 >= total {
        lo *= 0.5;
        tries += 1;
        if tries > 60 {
            return Err(Error::InvalidCurve("resampling walk did not close".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if chord_walk(nodes, &cum, mid, n, false).0 < total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (_, pts) = chord_walk(nodes, &cum, hi, n, true);
    if pts.len() != n {
        return Err(Error::InvalidCurve("resampling walk did not close".into()));
    }
    Ok(pts)
}
