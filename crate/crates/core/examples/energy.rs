//! Mass, elastic energy and total energy of a generated system.
//!
//! Usage: `cargo run --example energy -- [generator] [p] [lambda]`

use elastic_varifolds::generators::parse_spec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec = args.first().map_or("circle:1,2048", |s| s.as_str());
    let p: f64 = args.get(1).map_or(Ok(2.0), |s| s.parse())?;
    let lambda: f64 = args.get(2).map_or(Ok(1.0), |s| s.parse())?;

    let system = parse_spec(spec)?;
    let r = system.energy_report(p, lambda)?;
    println!("{spec}: {} curve(s)", system.curves().len());
    println!("mass   {:.6}", r.mass);
    println!("E_p    {:.6}", r.elastic);
    println!("total  {:.6}", r.total);
    for (k, c) in r.per_curve.iter().enumerate() {
        println!(
            "  curve {k}: length {:.6}  elastic {:.6}",
            c.length, c.elastic
        );
    }
    Ok(())
}
