//! Built-in curve families used by the examples, the CLI `--gen` flag and the
//! test suites.
//!
//! The simple generators panic on parameters that cannot produce a valid
//! curve (fewer than 8 nodes, non-positive sizes); [`parse_spec`] validates
//! user input first.

use crate::curve::DiscreteCurve;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::varifold::CurveSystem;
use std::f64::consts::PI;

/// One piece of a closed path. Pieces are sampled independently so their
/// endpoints are always nodes.
pub enum Piece {
    Line(Vec2, Vec2),
    /// Circular arc; `sweep` is signed (positive = counterclockwise).
    Arc {
        center: Vec2,
        radius: f64,
        start: f64,
        sweep: f64,
    },
    /// Parametric piece sampled uniformly in its parameter.
    Param {
        f: Box<dyn Fn(f64) -> Vec2>,
        t0: f64,
        t1: f64,
    },
}

impl Piece {
    pub fn param(f: impl Fn(f64) -> Vec2 + 'static, t0: f64, t1: f64) -> Piece {
        Piece::Param {
            f: Box::new(f),
            t0,
            t1,
        }
    }

    pub fn at(&self, u: f64) -> Vec2 {
        match self {
            Piece::Line(a, b) => {
                // exact endpoints in both traversal directions
                if u == 0.0 {
                    *a
                } else if u == 1.0 {
                    *b
                } else {
                    *a * (1.0 - u) + *b * u
                }
            }
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => *center + Vec2::from_angle(start + sweep * u) * *radius,
            Piece::Param { f, t0, t1 } => f(t0 + (t1 - t0) * u),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Piece::Line(a, b) => (*b - *a).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
            Piece::Param { .. } => {
                let m = 2000;
                (0..m)
                    .map(|j| {
                        (self.at((j + 1) as f64 / m as f64) - self.at(j as f64 / m as f64)).norm()
                    })
                    .sum()
            }
        }
    }

    /// Points at `u = j/m` for `j = 0..m` (the end point is left to the next piece).
    pub fn sample(&self, h: f64) -> Vec<Vec2> {
        let m = ((self.length() / h).ceil() as usize).max(1);
        (0..m).map(|j| self.at(j as f64 / m as f64)).collect()
    }
}

/// Samples a closed chain of pieces at spacing close to `h`.
pub fn sample_path(pieces: &[Piece], h: f64) -> Vec<Vec2> {
    pieces.iter().flat_map(|p| p.sample(h)).collect()
}

pub fn curve_from_path(pieces: &[Piece], h: f64) -> DiscreteCurve {
    DiscreteCurve::from_nodes(sample_path(pieces, h)).expect("generator produced an invalid curve")
}

pub fn circle_at(center: Vec2, r: f64, n: usize) -> DiscreteCurve {
    let nodes = (0..n)
        .map(|i| center + Vec2::from_angle(2.0 * PI * i as f64 / n as f64) * r)
        .collect();
    DiscreteCurve::from_nodes(nodes).expect("invalid circle parameters")
}

/// Counterclockwise regular `n`-gon inscribed in the circle of radius `r`.
pub fn circle(r: f64, n: usize) -> DiscreteCurve {
    circle_at(Vec2::ZERO, r, n)
}

/// Ellipse with semi-axes `a`, `b` sampled uniformly in the angle parameter.
pub fn ellipse(a: f64, b: f64, n: usize) -> DiscreteCurve {
    let nodes = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            Vec2::new(a * t.cos(), b * t.sin())
        })
        .collect();
    DiscreteCurve::from_nodes(nodes).expect("invalid ellipse parameters")
}

/// Gerono lemniscate `(sin t, sin t cos t)`: one closed curve with two lobes
/// and a perpendicular crossing at the origin. Samples are offset by half a
/// step so the crossing falls inside two edges.
pub fn figure_eight(n: usize) -> DiscreteCurve {
    let nodes = (0..n)
        .map(|i| lemniscate(2.0 * PI * (i as f64 + 0.5) / n as f64))
        .collect();
    DiscreteCurve::from_nodes(nodes).expect("invalid figure-eight parameters")
}

fn lemniscate(t: f64) -> Vec2 {
    Vec2::new(t.sin(), t.sin() * t.cos())
}

/// The two lobes of [`figure_eight`] as separate closed curves, each with a
/// corner at the origin. Same support and multiplicity as the single curve.
pub fn two_drops(n: usize) -> CurveSystem {
    assert!(n.is_multiple_of(2), "two_drops needs an even node count");
    let lobe = |range: std::ops::Range<usize>| {
        let mut nodes = vec![Vec2::ZERO];
        nodes.extend(range.map(|i| lemniscate(2.0 * PI * (i as f64 + 0.5) / n as f64)));
        DiscreteCurve::from_nodes(nodes).expect("invalid lobe")
    };
    CurveSystem::new(vec![lobe(0..n / 2), lobe(n / 2..n)]).expect("two lobes")
}

/// Axis-aligned square of side `s` centred at the origin, counterclockwise,
/// `n/4` nodes per side with the corners as nodes.
pub fn square(s: f64, n: usize) -> DiscreteCurve {
    assert!(
        n.is_multiple_of(4) && n >= 8,
        "square needs a multiple of 4 nodes"
    );
    let h = s / 2.0;
    let c = [
        Vec2::new(-h, -h),
        Vec2::new(h, -h),
        Vec2::new(h, h),
        Vec2::new(-h, h),
    ];
    let per = n / 4;
    let nodes = (0..4)
        .flat_map(|k| {
            let (a, b) = (c[k], c[(k + 1) % 4]);
            (0..per).map(move |j| a.lerp(b, j as f64 / per as f64))
        })
        .collect();
    DiscreteCurve::from_nodes(nodes).expect("invalid square")
}

/// Square of side `side` centred at `center` with corners replaced by
/// quarter circles of radius `radius`; about `n` nodes.
pub fn rounded_square(center: Vec2, side: f64, radius: f64, n: usize) -> DiscreteCurve {
    let h = side / 2.0;
    let core = h - radius;
    let perim = 4.0 * (side - 2.0 * radius) + 2.0 * PI * radius;
    let mut pieces = Vec::new();
    // start at the bottom-left end of the bottom side, counterclockwise
    let corners = [
        Vec2::new(core, -core),
        Vec2::new(core, core),
        Vec2::new(-core, core),
        Vec2::new(-core, -core),
    ];
    for (k, c) in corners.iter().enumerate() {
        let a0 = -PI / 2.0 + k as f64 * PI / 2.0;
        let prev = corners[(k + 3) % 4] + Vec2::from_angle(a0) * radius;
        let start = *c + Vec2::from_angle(a0) * radius;
        pieces.push(Piece::Line(center + prev, center + start));
        pieces.push(Piece::Arc {
            center: center + *c,
            radius,
            start: a0,
            sweep: PI / 2.0,
        });
    }
    curve_from_path(&pieces, perim / n as f64)
}

/// Half-width scale of the petals in [`figbm`].
pub const PETAL_BULGE: f64 = 1.3;

/// Petal attached at `(0,1)` pointing up: starts moving `+y`, returns moving
/// `-y`, tangent to the vertical axis at the tip, reaching `(0,3)`.
pub fn petal_up(s: f64) -> Vec2 {
    let k = PETAL_BULGE;
    Vec2::new(-2.0 * k * s.sin().powi(2) * s.cos(), 1.0 + 2.0 * s.sin())
}

/// The four-petal set on the unit cross. Curve one covers the left and right
/// petals and runs twice over the horizontal diameter; curve two does the
/// same vertically. `per_unit` is the number of nodes per unit length.
pub fn figbm(per_unit: usize) -> CurveSystem {
    let h = 1.0 / per_unit as f64;
    let vertical = bm_curve(0.0, h);
    let horizontal = bm_curve(-PI / 2.0, h);
    CurveSystem::new(vec![horizontal, vertical]).expect("figbm curves")
}

fn bm_curve(rot: f64, h: f64) -> DiscreteCurve {
    let up = Vec2::new(0.0, 1.0).rotated(rot);
    let pieces = vec![
        Piece::param(move |s| petal_up(s).rotated(rot), 0.0, PI),
        Piece::Line(up, -up),
        Piece::param(move |s| petal_up(s).rotated(rot + PI), 0.0, PI),
        Piece::Line(-up, up),
    ];
    curve_from_path(&pieces, h)
}

/// Height of the lens in [`two_cusp_leaf`].
pub const LEAF_HEIGHT: f64 = 0.4;

/// A lens `|y| <= a(1-x²)²` with cusps at `(±1, 0)`, covered by one closed
/// curve that runs over a ghost arc twice so the ghost has multiplicity 2.
pub fn two_cusp_leaf(per_unit: usize) -> CurveSystem {
    let h = 1.0 / per_unit as f64;
    let a = LEAF_HEIGHT;
    let upper = move |x: f64| Vec2::new(x, a * (1.0 - x * x).powi(2));
    let lower = move |x: f64| Vec2::new(x, -a * (1.0 - x * x).powi(2));
    let ghost = |t: f64| Vec2::new(1.0 + 1.5 * t.sin() - t / PI, 1.5 * (1.0 - t.cos()));
    let pieces = vec![
        Piece::param(upper, -1.0, 1.0),
        Piece::param(ghost, 0.0, 2.0 * PI),
        Piece::param(lower, -1.0, 1.0),
        Piece::param(ghost, 0.0, 2.0 * PI),
    ];
    CurveSystem::new(vec![curve_from_path(&pieces, h)]).expect("leaf curve")
}

/// Angle `φ` with `sin φ = sin θ + sin 2θ`, balancing the unit vectors of the
/// junction in [`junction_example`].
pub fn balancing_angle(theta: f64) -> f64 {
    (theta.sin() + (2.0 * theta).sin()).asin()
}

/// Three closed curves meeting at the origin with six pairwise distinct
/// tangent directions `e^{-iθ}, e^{-2iθ}, e^{i(θ-π)}, e^{i(2θ-π)}, e^{iφ},
/// e^{i(π-φ)}` whose unit vectors sum to zero.
pub fn junction_example(theta: f64, per_unit: usize) -> CurveSystem {
    let h = 1.0 / per_unit as f64;
    let phi = balancing_angle(theta);
    let top = {
        let span = PI - 2.0 * phi;
        let f = move |a: f64| Vec2::from_angle(a) * (PI * (a - phi) / span).sin();
        // the rose petal is slow near its ends; sample in the angle
        let m = ((Piece::param(f, phi, PI - phi).length() / h).ceil() as usize).max(8);
        let nodes: Vec<Vec2> = (0..m)
            .map(|j| {
                if j == 0 {
                    Vec2::ZERO
                } else {
                    f(phi + span * j as f64 / m as f64)
                }
            })
            .collect();
        DiscreteCurve::from_nodes(nodes).expect("top petal")
    };
    let right = wedge(-2.0 * theta, -theta, 1.0, h);
    let left = DiscreteCurve::from_nodes(
        right
            .nodes()
            .iter()
            .rev()
            .map(|p| Vec2::new(-p.x, p.y))
            .collect(),
    )
    .expect("left wedge");
    CurveSystem::new(vec![top, right, left]).expect("junction curves")
}

/// Thin loop out along the ray at angle `a0` and back along `a1 > a0`, closed
/// by an arc tangent to both rays; the arc centre sits at distance `reach`.
fn wedge(a0: f64, a1: f64, reach: f64, h: f64) -> DiscreteCurve {
    let half = 0.5 * (a1 - a0);
    let mid = 0.5 * (a0 + a1);
    let rho = reach * half.sin();
    let center = Vec2::from_angle(mid) * reach;
    let t0 = Vec2::from_angle(a0) * (reach * half.cos());
    let t1 = Vec2::from_angle(a1) * (reach * half.cos());
    let start = (t0 - center).angle();
    let pieces = vec![
        Piece::Line(Vec2::ZERO, t0),
        Piece::Arc {
            center,
            radius: rho,
            start,
            sweep: PI + (a1 - a0),
        },
        Piece::Line(t1, Vec2::ZERO),
    ];
    curve_from_path(&pieces, h.min(rho / 8.0))
}

/// Parses a `--gen` specification such as `circle:1,2048` or `figbm:64`.
pub fn parse_spec(spec: &str) -> Result<CurveSystem> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<f64> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad number '{s}' in '{spec}'")))
            })
            .collect::<Result<_>>()?
    };
    let bad = |msg: &str| Error::InvalidParameter(format!("{spec}: {msg}"));
    let count = |x: f64, min: usize| -> Result<usize> {
        if x.fract() != 0.0 || x < min as f64 {
            return Err(bad(&format!("count must be an integer >= {min}")));
        }
        Ok(x as usize)
    };
    let positive = |x: f64| -> Result<f64> {
        if x > 0.0 && x.is_finite() {
            Ok(x)
        } else {
            Err(bad("sizes must be positive"))
        }
    };
    let single = |c: DiscreteCurve| CurveSystem::new(vec![c]);
    match (name, nums.as_slice()) {
        ("circle", [r, n]) => single(circle(positive(*r)?, count(*n, 8)?)),
        ("ellipse", [a, b, n]) => single(ellipse(positive(*a)?, positive(*b)?, count(*n, 8)?)),
        ("figure-eight", [n]) => single(figure_eight(count(*n, 16)?)),
        ("two-drops", [n]) => {
            let n = count(*n, 16)?;
            if n % 2 != 0 {
                return Err(bad("node count must be even"));
            }
            Ok(two_drops(n))
        }
        ("figbm", [n]) => Ok(figbm(count(*n, 4)?)),
        ("square", [s, n]) => {
            let n = count(*n, 8)?;
            if n % 4 != 0 {
                return Err(bad("node count must be a multiple of 4"));
            }
            single(square(positive(*s)?, n))
        }
        ("leaf", [n]) => Ok(two_cusp_leaf(count(*n, 4)?)),
        ("junction", [theta, n]) => {
            if !(*theta > 0.0 && *theta < 0.3) {
                return Err(bad("angle must lie in (0, 0.3)"));
            }
            Ok(junction_example(*theta, count(*n, 4)?))
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown generator '{spec}'; expected circle:r,n | ellipse:a,b,n | figure-eight:n | \
             two-drops:n | figbm:n | square:s,n | leaf:n | junction:theta,n"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_arc_closes_tangentially() {
        let w = wedge(-0.2, -0.1, 1.0, 0.01);
        // only the origin node carries a large turning angle
        let phi = w.turning_angles();
        let big: Vec<usize> = (0..phi.len()).filter(|&i| phi[i].abs() > 0.2).collect();
        assert_eq!(big, vec![0]);
        assert!((phi[0].abs() - (PI - 0.1)).abs() < 1e-9);
    }

    #[test]
    fn junction_tangents_sum_to_zero() {
        let theta = 0.1;
        let phi = balancing_angle(theta);
        let dirs = [
            -theta,
            -2.0 * theta,
            theta - PI,
            2.0 * theta - PI,
            phi,
            PI - phi,
        ];
        let s = dirs
            .iter()
            .fold(Vec2::ZERO, |acc, a| acc + Vec2::from_angle(*a));
        assert!(s.norm() < 1e-14);
        assert_eq!(junction_example(theta, 64).curves().len(), 3);
    }

    #[test]
    fn figbm_has_petals_outside_unit_disc() {
        let sys = figbm(32);
        for c in sys.curves() {
            for p in c.nodes() {
                let r = p.norm();
                let on_cross = p.x.abs() < 1e-12 || p.y.abs() < 1e-12;
                assert!(r >= 1.0 - 1e-12 || on_cross, "{p:?}");
            }
        }
    }

    #[test]
    fn leaf_ghost_endpoints() {
        let g = |t: f64| Vec2::new(1.0 + 1.5 * t.sin() - t / PI, 1.5 * (1.0 - t.cos()));
        assert!((g(0.0) - Vec2::new(1.0, 0.0)).norm() < 1e-15);
        assert!((g(2.0 * PI) - Vec2::new(-1.0, 0.0)).norm() < 1e-12);
        two_cusp_leaf(32);
    }

    #[test]
    fn parse_specs() {
        assert_eq!(parse_spec("circle:1,64").unwrap().curves()[0].len(), 64);
        assert_eq!(parse_spec("figbm:16").unwrap().curves().len(), 2);
        assert!(parse_spec("square:1,10").is_err());
        assert!(parse_spec("circle:1").is_err());
        assert!(parse_spec("hexagon:3").is_err());
    }
}
