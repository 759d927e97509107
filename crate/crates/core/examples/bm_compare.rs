//! Four petals on the unit cross: the doubled cross against arcs and loops.
//!
//! Usage: `cargo run --release --example bm_compare -- [per_unit] [iters]`

use elastic_varifolds::relaxsolve::bm_compare;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let r = bm_compare(
        args.first().copied().unwrap_or(64),
        args.get(1).copied().unwrap_or(2000),
    )?;
    println!(
        "cross inside the unit disc: {:.6} (per connection {:.6})",
        r.cross_inside, r.cross_per_connection
    );
    for c in r.arcs.iter().chain(&r.loops) {
        println!(
            "{:<10} per connection {:>10.6}  bound {:>9.6}  holds {}",
            c.name,
            c.per_connection,
            c.lower_bound.unwrap_or(f64::NAN),
            c.bound_holds
        );
    }
    println!("cross cheapest: {}", r.cross_cheapest);
    Ok(())
}
