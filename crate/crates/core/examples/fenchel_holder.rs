//! Total absolute curvature against 2π and the Hölder chain
//! `2 ≤ E_1 ≤ mass^{1/p'} E_p^{1/p}` over the built-in generators.

use elastic_varifolds::generators::parse_spec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs = [
        "circle:1,256",
        "ellipse:2,1,256",
        "figure-eight:256",
        "two-drops:256",
        "figbm:32",
        "square:1,64",
        "leaf:32",
    ];
    for spec in specs {
        let s = parse_spec(spec)?;
        let tac: f64 = s
            .curves()
            .iter()
            .map(|c| c.total_absolute_curvature())
            .sum();
        println!("{spec:<18} total curvature {tac:.6}");
        for p in [1.5, 2.0, 3.0] {
            for v in s.holder_chain_check(p)? {
                println!(
                    "  p={p:<4} {:<22} {:.6} <= {:.6}  {}",
                    v.name,
                    v.lhs,
                    v.rhs,
                    if v.pass { "ok" } else { "FAIL" }
                );
            }
        }
    }
    Ok(())
}
