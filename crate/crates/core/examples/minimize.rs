//! Relaxes a free ellipse towards the optimal circle of `λ·L + ∫|k|^p`.
//!
//! Usage: `cargo run --release --example minimize -- [p] [lambda] [iters]`

use elastic_varifolds::generators::ellipse;
use elastic_varifolds::relaxsolve::{minimize, ConstraintSet, SolveOptions};
use elastic_varifolds::{CurveSystem, Vec2};
use std::f64::consts::PI;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let p = args.first().copied().unwrap_or(2.0);
    let lambda = args.get(1).copied().unwrap_or(1.0);
    let system = CurveSystem::single(ellipse(2.0, 1.0, 64));
    let mut opts = SolveOptions::new(p, lambda);
    opts.max_iters = args.get(2).map_or(20000, |x| *x as usize);
    opts.grad_tol = 1e-7;
    let r = minimize(&system, &ConstraintSet::free(&system), &opts)?;

    let nodes = r.system.curves()[0].nodes();
    let c = nodes.iter().fold(Vec2::ZERO, |a, x| a + *x) / nodes.len() as f64;
    let radius = nodes.iter().map(|x| (*x - c).norm()).sum::<f64>() / nodes.len() as f64;
    let r_star = ((p - 1.0) / lambda).powf(1.0 / p);
    let f_star = 2.0 * PI * lambda * r_star + 2.0 * PI * r_star.powf(1.0 - p);
    println!("status {:?} after {} iterations", r.status, r.iterations);
    println!(
        "energy {:.6} (circle optimum {:.6})",
        r.report.total, f_star
    );
    println!("radius {:.6} (circle optimum {:.6})", radius, r_star);
    Ok(())
}
