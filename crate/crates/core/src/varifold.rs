//! Curve systems viewed as integer rectifiable varifolds: mass, energy,
//! multiplicity, density and Hölder bounds, first variation and the `p = 2`
//! monotonicity profile.

use crate::curve::DiscreteCurve;
use crate::error::{Error, Result};
use crate::geom::{clipped_length_in_disc, point_segment_distance, BBox, Vec2};
use serde::{Deserialize, Serialize};

/// Slack added to the right-hand side of analytic inequality checks.
pub const EPS_CHECK: f64 = 1e-6;
/// Slack for the integer density bound.
pub const DENSITY_SLACK: f64 = 0.5;
/// Relative ripple tolerated in the monotonicity profile.
pub const MONO_REL_TOL: f64 = 1e-3;

/// A weighted, nonempty family of closed curves.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSystem {
    curves: Vec<DiscreteCurve>,
}

/// A named inequality check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl Verdict {
    /// `lhs <= rhs + slack`.
    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, slack: f64) -> Verdict {
        Verdict {
            name: name.into(),
            lhs,
            rhs,
            pass: lhs <= rhs + slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveEnergy {
    pub length: f64,
    pub elastic: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub p: f64,
    pub lambda: f64,
    pub mass: f64,
    pub elastic: f64,
    pub total: f64,
    pub per_curve: Vec<CurveEnergy>,
    pub checks: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityProfile {
    pub center: Vec2,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub limit_estimate: f64,
    pub tolerance: f64,
}

impl MonotonicityProfile {
    /// First pair of consecutive radii where `A` drops by more than the tolerance.
    pub fn first_violation(&self) -> Option<(f64, f64)> {
        (1..self.values.len())
            .find(|&i| self.values[i] < self.values[i - 1] - self.tolerance)
            .map(|i| (self.radii[i - 1], self.radii[i]))
    }

    /// Largest drop between consecutive radii (zero if nondecreasing).
    pub fn max_drop(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(0.0, f64::max)
    }

    pub fn verdict(&self) -> Verdict {
        Verdict {
            name: "monotonicity".into(),
            lhs: self.max_drop(),
            rhs: self.tolerance,
            pass: self.first_violation().is_none(),
        }
    }
}

/// A vector field with known Jacobian, `jacobian[r][c] = ∂X_r/∂x_c`.
pub trait TestField {
    fn value(&self, x: Vec2) -> Vec2;
    fn jacobian(&self, x: Vec2) -> [[f64; 2]; 2];
}

/// Quadratic vector polynomial times the smooth bump `exp(-1/(1-|y|²))`,
/// with `y = (x - center)/radius`; vanishes outside the ball.
#[derive(Clone, Debug, PartialEq)]
pub struct BumpField {
    pub center: Vec2,
    pub radius: f64,
    pub constant: Vec2,
    /// `linear[r][c]` multiplies `y_c` in component `r`.
    pub linear: [[f64; 2]; 2],
    /// Coefficients of `y₀²`, `y₀y₁`, `y₁²`.
    pub quadratic: [Vec2; 3],
}

impl BumpField {
    pub fn constant(center: Vec2, radius: f64, v: Vec2) -> BumpField {
        BumpField {
            center,
            radius,
            constant: v,
            linear: [[0.0; 2]; 2],
            quadratic: [Vec2::ZERO; 3],
        }
    }

    /// `X(x) = (x - center)·bump`.
    pub fn radial(center: Vec2, radius: f64) -> BumpField {
        BumpField {
            linear: [[radius, 0.0], [0.0, radius]],
            ..BumpField::constant(center, radius, Vec2::ZERO)
        }
    }

    /// A fixed family of fields spread over `bbox`, used when no fields are supplied.
    pub fn standard_family(bbox: &BBox) -> Vec<BumpField> {
        let c = (bbox.min + bbox.max) * 0.5;
        let r = 0.6 * bbox.diagonal();
        let q = (bbox.max - bbox.min) * 0.25;
        let offsets = [
            Vec2::ZERO,
            Vec2::new(q.x, q.y),
            Vec2::new(-q.x, q.y),
            Vec2::new(q.x, -q.y),
        ];
        offsets
            .iter()
            .enumerate()
            .map(|(k, o)| {
                let s = 1.0 + k as f64;
                BumpField {
                    center: c + *o,
                    radius: r,
                    constant: Vec2::new(0.3 * s, -0.2),
                    linear: [[0.5, -0.25 * s], [0.4, 0.1 * s]],
                    quadratic: [
                        Vec2::new(0.2, 0.1),
                        Vec2::new(-0.3, 0.05 * s),
                        Vec2::new(0.1, -0.2),
                    ],
                }
            })
            .collect()
    }

    fn poly(&self, y: Vec2) -> Vec2 {
        let l = &self.linear;
        let [q0, q1, q2] = self.quadratic;
        self.constant
            + Vec2::new(l[0][0] * y.x + l[0][1] * y.y, l[1][0] * y.x + l[1][1] * y.y)
            + q0 * (y.x * y.x)
            + q1 * (y.x * y.y)
            + q2 * (y.y * y.y)
    }
}

fn bump(q: f64) -> f64 {
    if q >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - q)).exp()
    }
}

impl TestField for BumpField {
    fn value(&self, x: Vec2) -> Vec2 {
        let y = (x - self.center) / self.radius;
        self.poly(y) * bump(y.norm_sq())
    }

    fn jacobian(&self, x: Vec2) -> [[f64; 2]; 2] {
        let y = (x - self.center) / self.radius;
        let q = y.norm_sq();
        let b = bump(q);
        if b == 0.0 {
            return [[0.0; 2]; 2];
        }
        let db = -b / ((1.0 - q) * (1.0 - q));
        let grad_b = y * (2.0 * db);
        let p = self.poly(y);
        let l = &self.linear;
        let [q0, q1, q2] = self.quadratic;
        // columns of DP with respect to y
        let d0 = Vec2::new(l[0][0], l[1][0]) + q0 * (2.0 * y.x) + q1 * y.y;
        let d1 = Vec2::new(l[0][1], l[1][1]) + q1 * y.x + q2 * (2.0 * y.y);
        let s = 1.0 / self.radius;
        [
            [
                s * (d0.x * b + p.x * grad_b.x),
                s * (d1.x * b + p.x * grad_b.y),
            ],
            [
                s * (d0.y * b + p.y * grad_b.x),
                s * (d1.y * b + p.y * grad_b.y),
            ],
        ]
    }
}

fn tangential_divergence(j: &[[f64; 2]; 2], t: Vec2) -> f64 {
    t.x * (j[0][0] * t.x + j[0][1] * t.y) + t.y * (j[1][0] * t.x + j[1][1] * t.y)
}

impl CurveSystem {
    pub fn new(curves: Vec<DiscreteCurve>) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::InvalidCurve(
                "a curve system needs at least one curve".into(),
            ));
        }
        for c in &curves {
            c.validate()?;
        }
        Ok(CurveSystem { curves })
    }

    pub fn single(curve: DiscreteCurve) -> Self {
        CurveSystem {
            curves: vec![curve],
        }
    }

    pub fn curves(&self) -> &[DiscreteCurve] {
        &self.curves
    }

    pub fn into_curves(self) -> Vec<DiscreteCurve> {
        self.curves
    }

    pub fn bbox(&self) -> BBox {
        self.curves
            .iter()
            .map(|c| c.bbox())
            .reduce(BBox::union)
            .expect("nonempty system")
    }

    pub fn diameter(&self) -> f64 {
        self.bbox().diagonal()
    }

    pub fn eps_geom(&self) -> f64 {
        self.curves.iter().map(|c| c.eps_geom()).fold(0.0, f64::max)
    }

    /// `μ_V(ℝ²) = Σ weight·length`.
    pub fn mass(&self) -> f64 {
        self.curves
            .iter()
            .map(|c| c.weight() as f64 * c.length())
            .sum()
    }

    /// `E_p(V) = Σ weight·E_p(γ)`.
    pub fn elastic_energy(&self, p: f64) -> Result<f64> {
        self.curves
            .iter()
            .map(|c| Ok(c.weight() as f64 * c.elastic_energy(p)?))
            .sum()
    }

    /// `λ·mass + E_p(V)`.
    pub fn total_energy(&self, p: f64, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {lambda}"
            )));
        }
        Ok(lambda * self.mass() + self.elastic_energy(p)?)
    }

    /// Energy breakdown together with the Hölder chain verdicts (for `p > 1`).
    pub fn energy_report(&self, p: f64, lambda: f64) -> Result<EnergyReport> {
        let total = self.total_energy(p, lambda)?;
        let per_curve = self
            .curves
            .iter()
            .map(|c| {
                Ok(CurveEnergy {
                    length: c.length(),
                    elastic: c.elastic_energy(p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let checks = if p > 1.0 {
            self.holder_chain_check(p)?
        } else {
            Vec::new()
        };
        Ok(EnergyReport {
            p,
            lambda,
            mass: self.mass(),
            elastic: self.elastic_energy(p)?,
            total,
            per_curve,
            checks,
        })
    }

    /// `2 <= E_1(V)` and `E_1(V) <= mass^{1/p'}·E_p(V)^{1/p}`.
    pub fn holder_chain_check(&self, p: f64) -> Result<Vec<Verdict>> {
        if !(p > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "the Hölder chain needs p > 1, got {p}"
            )));
        }
        let e1 = self.elastic_energy(1.0)?;
        let ep = self.elastic_energy(p)?;
        let bound = self.mass().powf((p - 1.0) / p) * ep.powf(1.0 / p);
        Ok(vec![
            Verdict::at_most("total_curvature_lower", 2.0, e1, 0.0),
            Verdict::at_most("holder_upper", e1, bound, EPS_CHECK),
        ])
    }

    /// Weighted number of passes of the system within `tol` of `point`.
    /// Consecutive near edges of one curve count as a single pass.
    pub fn multiplicity_at(&self, point: Vec2, tol: f64) -> u32 {
        let mut total = 0;
        for c in &self.curves {
            let nodes = c.nodes();
            let n = nodes.len();
            let near: Vec<bool> = (0..n)
                .map(|i| point_segment_distance(point, nodes[i], nodes[(i + 1) % n]) <= tol)
                .collect();
            let runs = (0..n)
                .filter(|&i| near[i] && !near[(i + n - 1) % n])
                .count();
            let runs = if runs == 0 && near[0] { 1 } else { runs };
            total += c.weight() * runs as u32;
        }
        total
    }

    /// `θ_V(x) <= E_1(V)/2` at every sample point.
    pub fn density_bound_check(&self, samples: &[Vec2], tol: f64) -> Result<Vec<Verdict>> {
        let half_e1 = 0.5 * self.elastic_energy(1.0)?;
        Ok(samples
            .iter()
            .map(|&x| {
                let m = self.multiplicity_at(x, tol) as f64;
                Verdict::at_most(
                    format!("density({:.6e},{:.6e})", x.x, x.y),
                    m,
                    half_e1,
                    DENSITY_SLACK,
                )
            })
            .collect())
    }

    /// Points spread along every curve: `per_curve` per curve, equally spaced in node index.
    pub fn sample_on_curve(&self, per_curve: usize) -> Vec<Vec2> {
        let mut out = Vec::new();
        for c in &self.curves {
            let nodes = c.nodes();
            let n = nodes.len();
            for k in 0..per_curve {
                let s = k as f64 * n as f64 / per_curve as f64;
                let i = s.floor() as usize % n;
                out.push(nodes[i].lerp(nodes[(i + 1) % n], s.fract()));
            }
        }
        out
    }

    /// `|∫div_Γ X dμ + ∫⟨X, k⟩ dμ|` for one field.
    ///
    /// The tangential divergence is integrated with a per-node rule using the
    /// unit tangents of both adjacent half edges; the curvature term uses the
    /// discrete curvature vector `τᵢ - τᵢ₋₁`, which makes the residual the
    /// quadrature error of the divergence term alone.
    pub fn first_variation_of(&self, field: &dyn TestField) -> f64 {
        let mut div = 0.0;
        let mut curv = 0.0;
        for c in &self.curves {
            let nodes = c.nodes();
            let n = nodes.len();
            let w = c.weight() as f64;
            let lens = c.edge_lengths();
            for i in 0..n {
                let prev = (i + n - 1) % n;
                let t_in = (nodes[i] - nodes[prev]) / lens[prev];
                let t_out = (nodes[(i + 1) % n] - nodes[i]) / lens[i];
                let j = field.jacobian(nodes[i]);
                div += w
                    * 0.5
                    * (lens[prev] * tangential_divergence(&j, t_in)
                        + lens[i] * tangential_divergence(&j, t_out));
                curv += w * field.value(nodes[i]).dot(t_out - t_in);
            }
        }
        (div + curv).abs()
    }

    /// Maximum first-variation residual over `fields`.
    pub fn first_variation_residual(&self, fields: &[&dyn TestField]) -> f64 {
        fields
            .iter()
            .map(|f| self.first_variation_of(*f))
            .fold(0.0, f64::max)
    }

    /// Norm of the summed discrete curvature vectors of nodes within `radius`
    /// of `point`; zero at a balanced junction, the corner jump otherwise.
    pub fn curvature_atom(&self, point: Vec2, radius: f64) -> f64 {
        let mut s = Vec2::ZERO;
        for c in &self.curves {
            let n = c.len();
            for (i, x) in c.nodes().iter().enumerate() {
                if (*x - point).norm() <= radius {
                    let d = c.edge_tangent(i) - c.edge_tangent((i + n - 1) % n);
                    s += d * c.weight() as f64;
                }
            }
        }
        s.norm()
    }

    /// `A(r) = (1/2 + 1/r)μ(B_r) + (1/r)∫_{B_r}⟨k, x - x₀⟩dμ + (1/2)∫_{B_r}|k|²dμ`.
    pub fn monotonicity_profile(&self, center: Vec2, radii: &[f64]) -> Result<MonotonicityProfile> {
        if radii.is_empty() || radii[0] <= 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "radii must be positive and strictly increasing".into(),
            ));
        }
        // per-node (distance, ⟨kℓ, x - x₀⟩, |k|²ℓ) contributions
        let mut node_terms = Vec::new();
        let mut edges = Vec::new();
        for c in &self.curves {
            let nodes = c.nodes();
            let n = nodes.len();
            let w = c.weight() as f64;
            let phi = c.turning_angles();
            let dual = c.dual_lengths();
            for i in 0..n {
                let d = c.edge_tangent(i) - c.edge_tangent((i + n - 1) % n);
                let rel = nodes[i] - center;
                node_terms.push((rel.norm(), w * d.dot(rel), w * phi[i] * phi[i] / dual[i]));
                edges.push((nodes[i], nodes[(i + 1) % n], w));
            }
        }
        node_terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values = Vec::with_capacity(radii.len());
        let (mut k, mut flux, mut bend) = (0, 0.0, 0.0);
        for &r in radii {
            while k < node_terms.len() && node_terms[k].0 <= r {
                flux += node_terms[k].1;
                bend += node_terms[k].2;
                k += 1;
            }
            let mu: f64 = edges
                .iter()
                .map(|(a, b, w)| w * clipped_length_in_disc(*a, *b, center, r))
                .sum();
            values.push((0.5 + 1.0 / r) * mu + flux / r + 0.5 * bend);
        }
        let mass = self.mass();
        let e2 = self.elastic_energy(2.0)?;
        Ok(MonotonicityProfile {
            center,
            radii: radii.to_vec(),
            values,
            limit_estimate: 0.5 * (mass + e2),
            tolerance: MONO_REL_TOL * (mass + e2),
        })
    }
}
