//! Cusp parity: the halved graph of the two-cusp leaf has exactly two
//! vertices of odd density, at the cusp points.

use elastic_varifolds::generators::two_cusp_leaf;
use elastic_varifolds::graphcheck::{
    boundary_marking, cusp_parity_check, extract_graph, ANGULAR_TOL,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = two_cusp_leaf(64);
    let g = extract_graph(&s, None)?;
    let marking = boundary_marking(&s, &g);
    let r = cusp_parity_check(&g, &marking, ANGULAR_TOL)?;
    println!("regular: {}", r.regular);
    println!("halved multiplicities: {:?}", r.halved);
    for p in &r.odd_positions {
        println!("odd vertex at ({:.4}, {:.4})", p.x, p.y);
    }
    println!("even number of odd vertices: {}", r.even_count);
    Ok(())
}
