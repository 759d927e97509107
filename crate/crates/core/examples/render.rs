//! Writes an SVG of a generated system with strokes colored by multiplicity.
//!
//! Usage: `cargo run --example render -- [generator] [out.svg]`

use elastic_varifolds::generators::parse_spec;
use elastic_varifolds::io::render_svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec = args.first().map_or("figbm:32", |s| s.as_str());
    let out = args.get(1).map_or("figure.svg", |s| s.as_str());
    std::fs::write(out, render_svg(&parse_spec(spec)?, 600.0))?;
    println!("wrote {out}");
    Ok(())
}
