use elastic_varifolds::curve::DiscreteCurve;
use elastic_varifolds::io::{parse_system, system_to_json};
use elastic_varifolds::relaxsolve::gradient_of;
use elastic_varifolds::winding::{winding_number, winding_number_by_angles};
use elastic_varifolds::{CurveSystem, Vec2};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn points(min: usize, max: usize) -> impl Strategy<Value = Vec<Vec2>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), min..max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Vec2::new(x, y)).collect())
}

fn star() -> impl Strategy<Value = Vec<Vec2>> {
    prop::collection::vec(0.2..1.5f64, 8..64).prop_map(|r| {
        let n = r.len();
        r.iter()
            .enumerate()
            .map(|(i, &s)| Vec2::from_angle(TAU * i as f64 / n as f64) * s)
            .collect()
    })
}

fn rotate(p: Vec2, a: f64) -> Vec2 {
    Vec2::new(p.x * a.cos() - p.y * a.sin(), p.x * a.sin() + p.y * a.cos())
}

proptest! {
    #[test]
    fn total_curvature_at_least_two_pi(nodes in prop_oneof![points(8, 40), star()]) {
        if let Ok(c) = DiscreteCurve::from_nodes(nodes) {
            prop_assert!(c.total_absolute_curvature() >= TAU - 1e-9);
        }
    }

    #[test]
    fn energy_is_rigid_motion_invariant_and_scales(nodes in star(), a in 0.0..TAU, dx in -5.0..5.0f64, s in 0.2..5.0f64, p in 1.0..4.0f64) {
        let c = DiscreteCurve::from_nodes(nodes.clone()).unwrap();
        let moved = DiscreteCurve::from_nodes(nodes.iter().map(|q| rotate(*q, a) + Vec2::new(dx, -dx)).collect()).unwrap();
        let scaled = DiscreteCurve::from_nodes(nodes.iter().map(|q| *q * s).collect()).unwrap();
        let e = c.elastic_energy(p).unwrap();
        prop_assert!((moved.elastic_energy(p).unwrap() - e).abs() <= 1e-9 * e);
        prop_assert!((scaled.elastic_energy(p).unwrap() - e * s.powf(1.0 - p)).abs() <= 1e-9 * e * s.powf(1.0 - p));
    }

    #[test]
    fn holder_upper_bound(nodes in prop_oneof![points(8, 40), star()], p in 1.1..4.0f64) {
        if let Ok(c) = DiscreteCurve::from_nodes(nodes) {
            let s = CurveSystem::single(c);
            let q = p / (p - 1.0);
            let upper = s.mass().powf(1.0 / q) * s.elastic_energy(p).unwrap().powf(1.0 / p);
            prop_assert!(s.elastic_energy(1.0).unwrap() <= upper * (1.0 + 1e-12));
        }
    }

    #[test]
    fn winding_by_crossings_matches_angle_sum(nodes in prop_oneof![points(8, 24), star()], x in -2.0..2.0f64, y in -2.0..2.0f64) {
        if let Ok(c) = DiscreteCurve::from_nodes(nodes) {
            let q = Vec2::new(x, y);
            if let (Ok(a), Ok(b)) = (winding_number(&c, q), winding_number_by_angles(&c, q)) {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn gradient_sums_to_zero(nodes in star(), w in 1u32..4, p in 1.2..4.0f64, lambda in 0.1..5.0f64) {
        let g = gradient_of(&nodes, w, p, lambda);
        let sum = g.iter().fold(Vec2::ZERO, |a, v| a + *v);
        let scale = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(sum.norm() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn curve_json_round_trips(a in star(), b in star(), w in 1u32..5) {
        let s = CurveSystem::new(vec![
            DiscreteCurve::from_nodes(a).unwrap(),
            DiscreteCurve::new(b, w).unwrap(),
        ]).unwrap();
        let text = system_to_json(&s);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(system_to_json(&back), text);
    }
}
