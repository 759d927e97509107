//! First variation of the varifold of closed curves against smooth bump
//! fields: the residual shrinks under refinement, including at the
//! unbalanced junction whose relaxed energy is infinite.

use elastic_varifolds::generators::{balancing_angle, circle, figure_eight, junction_example};
use elastic_varifolds::varifold::{BumpField, TestField};
use elastic_varifolds::CurveSystem;

fn residual(s: &CurveSystem) -> f64 {
    let fields = BumpField::standard_family(&s.bbox());
    let refs: Vec<&dyn TestField> = fields.iter().map(|f| f as &dyn TestField).collect();
    s.first_variation_residual(&refs)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [256, 512, 1024] {
        let c = CurveSystem::single(circle(1.0, n));
        let e = CurveSystem::single(figure_eight(n));
        println!(
            "n={n:<5} circle {:.3e}  figure-eight {:.3e}",
            residual(&c),
            residual(&e)
        );
    }
    let theta = 0.3;
    println!("junction angles {theta} and {:.4}", balancing_angle(theta));
    for per_unit in [32, 64, 128] {
        println!(
            "  per unit {per_unit:<4} residual {:.3e}",
            residual(&junction_example(theta, per_unit))
        );
    }
    Ok(())
}
