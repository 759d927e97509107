//! Compares candidate completions of two touching squares inside the unit disc.
//!
//! Usage: `cargo run --release --example inpaint -- [lambda] [p] [per_unit]`

use elastic_varifolds::relaxsolve::{inpaint_scenario, InpaintOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let mut o = InpaintOptions::new(
        args.first().copied().unwrap_or(0.2),
        args.get(1).copied().unwrap_or(2.0),
    );
    if let Some(n) = args.get(2) {
        o.per_unit = *n as usize;
    }
    let r = inpaint_scenario(&o)?;
    println!("lambda = {}, p = {}", r.lambda, r.p);
    println!(
        "cross: {:.6} (4λ = {:.6}, rel. error {:.2e})",
        r.cross.energy,
        4.0 * r.lambda,
        r.cross_error
    );
    for c in &r.others {
        println!(
            "{:<22} initial {:>10.6}  optimized {:>10.6}  per connection {:>9.6}  bound {:>9.6}  iters {:>5} {:?}",
            c.name,
            c.energy_initial,
            c.energy,
            c.per_connection,
            c.lower_bound.unwrap_or(f64::NAN),
            c.iterations,
            c.status
        );
    }
    println!("cross wins: {}", r.cross_wins);
    Ok(())
}
