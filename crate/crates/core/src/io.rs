//! File formats: curve JSON, freeze masks, CSV traces and profiles, verdict
//! JSON and SVG figures. All writers are deterministic.

use crate::curve::DiscreteCurve;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::relaxsolve::{ClampRegion, ConstraintSet, TraceRow};
use crate::varifold::{CurveSystem, MonotonicityProfile, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;
use std::path::Path;

/// Version of the file formats written by this crate.
pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub nodes: Vec<[f64; 2]>,
    #[serde(default = "one")]
    pub weight: u32,
}

fn one() -> u32 {
    1
}

/// On-disk form of a [`CurveSystem`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub curves: Vec<CurveRecord>,
}

impl CurveFile {
    pub fn from_system(system: &CurveSystem) -> Self {
        let curves = system
            .curves()
            .iter()
            .map(|c| CurveRecord {
                nodes: c.nodes().iter().map(|p| [p.x, p.y]).collect(),
                weight: c.weight(),
            })
            .collect();
        CurveFile { curves }
    }

    pub fn to_system(&self) -> Result<CurveSystem> {
        let curves = self
            .curves
            .iter()
            .map(|r| {
                DiscreteCurve::new(
                    r.nodes.iter().map(|p| Vec2::new(p[0], p[1])).collect(),
                    r.weight,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        CurveSystem::new(curves)
    }
}

pub fn parse_system(text: &str) -> Result<CurveSystem> {
    serde_json::from_str::<CurveFile>(text)?.to_system()
}

pub fn load_system(path: &Path) -> Result<CurveSystem> {
    parse_system(&std::fs::read_to_string(path)?)
}

pub fn system_to_json(system: &CurveSystem) -> String {
    to_canonical_json(&CurveFile::from_system(system))
}

pub fn save_system(system: &CurveSystem, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, system_to_json(system))?)
}

/// Freeze file: either an explicit per-node mask or a clamp region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FreezeFile {
    Mask { frozen: Vec<Vec<bool>> },
    Region { clamp: ClampRegion },
}

impl FreezeFile {
    pub fn to_constraints(&self, system: &CurveSystem) -> Result<ConstraintSet> {
        let c = match self {
            FreezeFile::Mask { frozen } => ConstraintSet {
                frozen: frozen.clone(),
            },
            FreezeFile::Region { clamp } => ConstraintSet::from_region(system, clamp),
        };
        c.check(system)?;
        Ok(c)
    }
}

pub fn load_constraints(path: &Path, system: &CurveSystem) -> Result<ConstraintSet> {
    serde_json::from_str::<FreezeFile>(&std::fs::read_to_string(path)?)?.to_constraints(system)
}

/// Float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// Pretty JSON with sorted keys, 17-significant-digit floats and scalar
/// arrays kept on one line.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => write!(out, "{i}").unwrap(),
            (_, Some(u)) => write!(out, "{u}").unwrap(),
            _ => out.push_str(&fmt_f64(n.as_f64().unwrap_or(f64::NAN))),
        },
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, depth);
            }
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                pad(out, depth + 1);
                write!(out, "{}: ", Value::String(k.clone())).unwrap();
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
    }
}

pub fn verdicts_json(verdicts: &[Verdict]) -> String {
    to_canonical_json(&verdicts)
}

pub fn trace_csv(trace: &[TraceRow]) -> String {
    let mut out = String::from("iter,energy,grad_norm,step\n");
    for t in trace {
        writeln!(
            out,
            "{},{},{},{}",
            t.iter,
            fmt_f64(t.energy),
            fmt_f64(t.grad_norm),
            fmt_f64(t.step)
        )
        .unwrap();
    }
    out
}

pub fn monotonicity_csv(profile: &MonotonicityProfile) -> String {
    let mut out = String::from("r,A\n");
    for (r, a) in profile.radii.iter().zip(&profile.values) {
        writeln!(out, "{},{}", fmt_f64(*r), fmt_f64(*a)).unwrap();
    }
    out
}

const PALETTE: [&str; 5] = ["#000000", "#1f5fbf", "#2a9d3a", "#c8321e", "#7b2fa8"];

/// Stroke color for a multiplicity.
pub fn multiplicity_color(m: u32) -> &'static str {
    PALETTE[(m.max(1) as usize - 1).min(PALETTE.len() - 1)]
}

/// SVG figure of the system; runs of segments with equal multiplicity share
/// one polyline colored by [`multiplicity_color`].
pub fn render_svg(system: &CurveSystem, width: f64) -> String {
    let bb = system.bbox();
    let margin = 0.05 * (bb.max.x - bb.min.x).max(bb.max.y - bb.min.y).max(1e-12);
    let (x0, y1) = (bb.min.x - margin, bb.max.y + margin);
    let (w, h) = (
        bb.max.x - bb.min.x + 2.0 * margin,
        bb.max.y - bb.min.y + 2.0 * margin,
    );
    let scale = width / w;
    let map = |p: Vec2| ((p.x - x0) * scale, (y1 - p.y) * scale);
    let tol = 1e-6 * system.diameter().max(1e-12);

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.3}\" height=\"{:.3}\" viewBox=\"0 0 {:.3} {:.3}\">",
        width,
        h * scale,
        width,
        h * scale
    )
    .unwrap();
    writeln!(
        out,
        "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>"
    )
    .unwrap();
    for c in system.curves() {
        let nodes = c.nodes();
        let n = nodes.len();
        let mult: Vec<u32> = (0..n)
            .map(|i| system.multiplicity_at((nodes[i] + nodes[(i + 1) % n]) * 0.5, tol))
            .collect();
        // start each polyline at a multiplicity change so runs do not wrap
        let start = (0..n)
            .find(|&i| mult[i] != mult[(i + n - 1) % n])
            .unwrap_or(0);
        let mut i = 0;
        while i < n {
            let m = mult[(start + i) % n];
            let mut pts = vec![nodes[(start + i) % n]];
            while i < n && mult[(start + i) % n] == m {
                pts.push(nodes[(start + i + 1) % n]);
                i += 1;
            }
            let coords: Vec<String> = pts
                .iter()
                .map(|p| {
                    let (x, y) = map(*p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            writeln!(
                out,
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{:.1}\" data-multiplicity=\"{}\" points=\"{}\"/>",
                multiplicity_color(m),
                1.0 + m as f64,
                m,
                coords.join(" ")
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

pub(crate) fn parse_list<T: std::str::FromStr>(text: &str, n: usize, what: &str) -> Result<Vec<T>> {
    let v: Vec<T> = text
        .split(',')
        .map(|s| s.trim().parse::<T>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidParameter(format!("{what}: cannot parse '{text}'")))?;
    if v.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{what}: expected {n} comma-separated values, got '{text}'"
        )));
    }
    Ok(v)
}
