//! Winding numbers and reconstruction of the enclosed set by winding parity.

use crate::curve::{turning_angle, DiscreteCurve};
use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, BBox, Vec2};
use crate::varifold::CurveSystem;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn is_left(a: Vec2, b: Vec2, p: Vec2) -> f64 {
    (b - a).cross(p - a)
}

/// Signed crossings of the ray `p + t·(1,0)`, `t > 0`, using half-open edges
/// so a ray through a vertex is counted exactly once.
fn crossing_count(nodes: &[Vec2], p: Vec2) -> i64 {
    let n = nodes.len();
    let mut wn = 0;
    for i in 0..n {
        let (a, b) = (nodes[i], nodes[(i + 1) % n]);
        if a.y <= p.y {
            if b.y > p.y && is_left(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && is_left(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Distance from `p` to the polyline.
pub fn distance_to_curve(curve: &DiscreteCurve, p: Vec2) -> f64 {
    let nodes = curve.nodes();
    let n = nodes.len();
    (0..n)
        .map(|i| point_segment_distance(p, nodes[i], nodes[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

fn reject_on_curve(curve: &DiscreteCurve, p: Vec2, eps: f64) -> Result<()> {
    let d = distance_to_curve(curve, p);
    if d <= eps {
        return Err(Error::OnCurve {
            x: p.x,
            y: p.y,
            distance: d,
        });
    }
    Ok(())
}

/// Winding number of `curve` around `p` by signed crossing counting.
pub fn winding_number(curve: &DiscreteCurve, p: Vec2) -> Result<i64> {
    reject_on_curve(curve, p, curve.eps_geom())?;
    Ok(crossing_count(curve.nodes(), p))
}

/// Winding number counted along the ray from `p` in `direction`.
pub fn winding_number_along(curve: &DiscreteCurve, p: Vec2, direction: Vec2) -> Result<i64> {
    reject_on_curve(curve, p, curve.eps_geom())?;
    let rot = -direction.angle();
    let nodes: Vec<Vec2> = curve
        .nodes()
        .iter()
        .map(|x| (*x - p).rotated(rot))
        .collect();
    Ok(crossing_count(&nodes, Vec2::ZERO))
}

/// Winding number as the summed signed angle subtended by the edges.
pub fn winding_number_by_angles(curve: &DiscreteCurve, p: Vec2) -> Result<i64> {
    reject_on_curve(curve, p, curve.eps_geom())?;
    let nodes = curve.nodes();
    let n = nodes.len();
    let total: f64 = (0..n)
        .map(|i| turning_angle(nodes[i] - p, nodes[(i + 1) % n] - p))
        .sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Weighted total winding `Σ wᵢ·ind_{γᵢ}(p)`.
pub fn total_winding(system: &CurveSystem, p: Vec2) -> Result<i64> {
    let eps = system.eps_geom();
    system
        .curves()
        .iter()
        .map(|c| {
            reject_on_curve(c, p, eps)?;
            Ok(c.weight() as i64 * crossing_count(c.nodes(), p))
        })
        .sum()
}

/// True iff the weighted total winding around `p` is odd.
pub fn parity_inside(system: &CurveSystem, p: Vec2) -> Result<bool> {
    Ok(total_winding(system, p)?.rem_euclid(2) == 1)
}

/// The samples where the multiplicity is odd.
pub fn odd_multiplicity_field(system: &CurveSystem, samples: &[Vec2], tol: f64) -> Vec<Vec2> {
    samples
        .iter()
        .copied()
        .filter(|&x| system.multiplicity_at(x, tol) % 2 == 1)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Inside,
    Outside,
    Boundary,
}

impl Label {
    pub fn gray(self) -> u8 {
        match self {
            Label::Inside => 255,
            Label::Boundary => 128,
            Label::Outside => 0,
        }
    }
}

/// Cell labels on a regular grid; row `j = 0` is the bottom row.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionGrid {
    pub bbox: BBox,
    pub nx: usize,
    pub ny: usize,
    labels: Vec<Label>,
}

/// Sidecar metadata written next to a PGM raster.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub bbox: [f64; 4],
    pub resolution: [usize; 2],
}

impl ReconstructionGrid {
    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[j * self.nx + i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn cell_size(&self) -> Vec2 {
        let d = self.bbox.max - self.bbox.min;
        Vec2::new(d.x / self.nx as f64, d.y / self.ny as f64)
    }

    pub fn cell_center(&self, i: usize, j: usize) -> Vec2 {
        let h = self.cell_size();
        self.bbox.min + Vec2::new((i as f64 + 0.5) * h.x, (j as f64 + 0.5) * h.y)
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    fn cell_area(&self) -> f64 {
        let h = self.cell_size();
        h.x * h.y
    }

    /// Area of the INSIDE cells only.
    pub fn inside_area(&self) -> f64 {
        self.count(Label::Inside) as f64 * self.cell_area()
    }

    /// INSIDE cells plus half of the BOUNDARY band.
    pub fn area_estimate(&self) -> f64 {
        (self.count(Label::Inside) as f64 + 0.5 * self.count(Label::Boundary) as f64)
            * self.cell_area()
    }

    /// Binary PGM (P5), top row first.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.nx, self.ny).into_bytes();
        for j in (0..self.ny).rev() {
            out.extend((0..self.nx).map(|i| self.label(i, j).gray()));
        }
        out
    }

    pub fn meta(&self) -> GridMeta {
        GridMeta {
            bbox: [
                self.bbox.min.x,
                self.bbox.min.y,
                self.bbox.max.x,
                self.bbox.max.y,
            ],
            resolution: [self.nx, self.ny],
        }
    }
}

/// Labels every cell by the parity of the total winding at its centre;
/// centres within one cell diagonal of a curve are BOUNDARY. Rows are
/// processed in parallel on the current rayon pool.
pub fn reconstruct_set(
    system: &CurveSystem,
    bbox: BBox,
    nx: usize,
    ny: usize,
) -> Result<ReconstructionGrid> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidParameter(
            "resolution must be positive".into(),
        ));
    }
    if !(bbox.max.x > bbox.min.x && bbox.max.y > bbox.min.y) {
        return Err(Error::InvalidParameter(
            "bbox must have positive extent".into(),
        ));
    }
    let mut grid = ReconstructionGrid {
        bbox,
        nx,
        ny,
        labels: Vec::new(),
    };
    let h = grid.cell_size();
    let diag = h.norm();
    let boundary = boundary_mask(system, &grid, diag);
    let rows: Vec<Vec<Label>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let y = bbox.min.y + (j as f64 + 0.5) * h.y;
            let crossings = row_crossings(system, y);
            (0..nx)
                .map(|i| {
                    if boundary[j * nx + i] {
                        return Label::Boundary;
                    }
                    let x = bbox.min.x + (i as f64 + 0.5) * h.x;
                    let w: i64 = crossings
                        .iter()
                        .filter(|(cx, _)| *cx > x)
                        .map(|(_, s)| s)
                        .sum();
                    if w.rem_euclid(2) == 1 {
                        Label::Inside
                    } else {
                        Label::Outside
                    }
                })
                .collect()
        })
        .collect();
    grid.labels = rows.into_iter().flatten().collect();
    Ok(grid)
}

/// Weighted signed crossings of the horizontal line at height `y`, with the
/// same half-open rule as [`winding_number`].
fn row_crossings(system: &CurveSystem, y: f64) -> Vec<(f64, i64)> {
    let mut out = Vec::new();
    for c in system.curves() {
        let nodes = c.nodes();
        let n = nodes.len();
        let w = c.weight() as i64;
        for i in 0..n {
            let (a, b) = (nodes[i], nodes[(i + 1) % n]);
            let sign = if a.y <= y && b.y > y {
                1
            } else if b.y <= y && a.y > y {
                -1
            } else {
                continue;
            };
            let x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
            out.push((x, sign * w));
        }
    }
    out
}

fn boundary_mask(system: &CurveSystem, grid: &ReconstructionGrid, radius: f64) -> Vec<bool> {
    let (nx, ny) = (grid.nx, grid.ny);
    let h = grid.cell_size();
    let mut mask = vec![false; nx * ny];
    let cell = |v: f64, lo: f64, step: f64, n: usize| {
        (((v - lo) / step).floor().max(0.0) as usize).min(n - 1)
    };
    for c in system.curves() {
        let nodes = c.nodes();
        let n = nodes.len();
        for k in 0..n {
            let (a, b) = (nodes[k], nodes[(k + 1) % n]);
            let lo = Vec2::new(a.x.min(b.x) - radius, a.y.min(b.y) - radius);
            let hi = Vec2::new(a.x.max(b.x) + radius, a.y.max(b.y) + radius);
            if hi.x < grid.bbox.min.x
                || hi.y < grid.bbox.min.y
                || lo.x > grid.bbox.max.x
                || lo.y > grid.bbox.max.y
            {
                continue;
            }
            let (i0, i1) = (
                cell(lo.x, grid.bbox.min.x, h.x, nx),
                cell(hi.x, grid.bbox.min.x, h.x, nx),
            );
            let (j0, j1) = (
                cell(lo.y, grid.bbox.min.y, h.y, ny),
                cell(hi.y, grid.bbox.min.y, h.y, ny),
            );
            for j in j0..=j1 {
                for i in i0..=i1 {
                    if !mask[j * nx + i]
                        && point_segment_distance(grid.cell_center(i, j), a, b) <= radius
                    {
                        mask[j * nx + i] = true;
                    }
                }
            }
        }
    }
    mask
}
