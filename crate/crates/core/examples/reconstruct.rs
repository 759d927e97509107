//! Parity reconstruction: the figure-eight traced as one curve and the same
//! picture as two tangent drops label the plane identically.
//!
//! Usage: `cargo run --release --example reconstruct -- [out.pgm]`

use elastic_varifolds::generators::{figure_eight, two_drops};
use elastic_varifolds::winding::{reconstruct_set, Label};
use elastic_varifolds::{BBox, CurveSystem, Vec2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bbox = BBox {
        min: Vec2::new(-1.2, -0.8),
        max: Vec2::new(1.2, 0.8),
    };
    let one = reconstruct_set(&CurveSystem::single(figure_eight(1024)), bbox, 240, 160)?;
    let two = reconstruct_set(&two_drops(1024), bbox, 240, 160)?;
    let (mut compared, mut differ) = (0, 0);
    for (a, b) in one.labels().iter().zip(two.labels()) {
        if *a != Label::Boundary && *b != Label::Boundary {
            compared += 1;
            differ += usize::from(a != b);
        }
    }
    println!(
        "inside area: one curve {:.5}, two drops {:.5}",
        one.inside_area(),
        two.inside_area()
    );
    println!("cells differing: {differ} of {compared}");
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, one.to_pgm())?;
        println!("wrote {path}");
    }
    Ok(())
}
