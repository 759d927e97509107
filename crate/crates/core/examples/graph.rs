//! Planar multigraph of the four-petal system: vertices, edge
//! multiplicities, directional densities and regularity.

use elastic_varifolds::generators::figbm;
use elastic_varifolds::graphcheck::{
    directional_densities, extract_graph, is_regular, ANGULAR_TOL,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = figbm(32);
    let g = extract_graph(&s, None)?;
    println!("{} vertices, {} edges", g.vertices.len(), g.edges.len());
    for (k, e) in g.edges.iter().enumerate() {
        println!(
            "  edge {k}: {:?} -> {:?}, multiplicity {}",
            e.a, e.b, e.multiplicity
        );
    }
    for v in 0..g.vertices.len() {
        let rep = directional_densities(&g, v, ANGULAR_TOL)?;
        let p = rep.position;
        println!(
            "vertex {v} at ({:.3}, {:.3}), density {}",
            p.x, p.y, rep.local_density
        );
        for d in &rep.directions {
            println!(
                "  direction ({:+.3}, {:+.3}): rho+ {} rho- {}",
                d.direction.x, d.direction.y, d.rho_plus, d.rho_minus
            );
        }
    }
    println!("{}", is_regular(&g, ANGULAR_TOL)?.message);
    Ok(())
}
