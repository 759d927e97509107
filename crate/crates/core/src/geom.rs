//! Planar vector type and small segment helpers shared by every module.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        Vec2::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn normalized(self) -> Vec2 {
        self / self.norm()
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn rotated(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min: Vec2,
    pub max: Vec2,
}

impl BBox {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        BBox { min, max }
    }

    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Vec2>) -> Option<BBox> {
        let mut it = pts.into_iter();
        let first = *it.next()?;
        let mut b = BBox::new(first, first);
        for p in it {
            b.min.x = b.min.x.min(p.x);
            b.min.y = b.min.y.min(p.y);
            b.max.x = b.max.x.max(p.x);
            b.max.y = b.max.y.max(p.y);
        }
        Some(b)
    }

    pub fn union(self, o: BBox) -> BBox {
        BBox::new(
            Vec2::new(self.min.x.min(o.min.x), self.min.y.min(o.min.y)),
            Vec2::new(self.max.x.max(o.max.x), self.max.y.max(o.max.y)),
        )
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_box(&self, o: &BBox) -> bool {
        self.contains(o.min) && self.contains(o.max)
    }
}

/// Closest point parameter `t ∈ [0,1]` on segment `a→b` to `p`.
pub fn project_onto_segment(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 == 0.0 {
        return 0.0;
    }
    ((p - a).dot(d) / len2).clamp(0.0, 1.0)
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let t = project_onto_segment(p, a, b);
    (p - a.lerp(b, t)).norm()
}

/// Length of the part of segment `a→b` inside the closed disc `|x - c| <= r`.
pub fn clipped_length_in_disc(a: Vec2, b: Vec2, c: Vec2, r: f64) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return 0.0;
    }
    // |a - c + t d|^2 = r^2
    let f = a - c;
    let qa = d.norm_sq();
    let qb = 2.0 * f.dot(d);
    let qc = f.norm_sq() - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt();
    let t0 = ((-qb - sq) / (2.0 * qa)).max(0.0);
    let t1 = ((-qb + sq) / (2.0 * qa)).min(1.0);
    if t1 <= t0 {
        0.0
    } else {
        (t1 - t0) * len
    }
}

/// Unit tangent at the first point of the interpolating polynomial through
/// `pts` (at most four are used), parametrised by cumulative chord length.
/// Falls back to the first chord when degenerate.
pub fn start_tangent(pts: &[Vec2]) -> Vec2 {
    assert!(pts.len() >= 2, "start_tangent needs two points");
    let pts = &pts[..pts.len().min(4)];
    let chord = (pts[1] - pts[0]).normalized();
    let mut s = vec![0.0];
    for w in pts.windows(2) {
        s.push(s.last().unwrap() + (w[1] - w[0]).norm());
    }
    if s.windows(2).any(|w| !(w[1] > w[0])) {
        return chord;
    }
    let mut d = pts[0] * -s[1..].iter().map(|sj| 1.0 / sj).sum::<f64>();
    for k in 1..pts.len() {
        let mut c = 1.0 / s[k];
        for j in 1..pts.len() {
            if j != k {
                c *= -s[j] / (s[k] - s[j]);
            }
        }
        d += pts[k] * c;
    }
    let n = d.norm();
    if n > 0.0 && n.is_finite() {
        d / n
    } else {
        chord
    }
}
