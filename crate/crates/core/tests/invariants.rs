use std::time::{Duration, Instant};

use knotnu::arith::Rational;
use knotnu::diagram::{jones_polynomial, knot_by_name, random_walk, PlanarDiagram};
use knotnu::lee::cube::Cube;
use knotnu::lee::{graded_euler_characteristic, jones_in_q, Backend, Engine};
use knotnu::seifert::{boundary_diagram, BandPresentation, SeifertMatrix};

fn knot(name: &str) -> PlanarDiagram {
    knot_by_name(name).unwrap()
}

#[test]
fn torus_knots_with_the_reference_backend() {
    let e = Engine::with_defaults();
    for (name, nu) in [("T2,3", 1), ("T2,5", 2), ("T2,7", 3), ("T3,4", 3), ("T3,5", 4)] {
        let start = Instant::now();
        let r = e.s_invariant(&knot(name), Backend::Reference).unwrap();
        assert_eq!(r.nu, nu, "{name}");
        assert_eq!(r.s, 2 * nu, "{name}");
        assert!(start.elapsed() < Duration::from_secs(60), "{name} took {:?}", start.elapsed());
    }
}

#[test]
fn mirrors_and_inverses_negate() {
    let e = Engine::with_defaults();
    for name in ["T2,3", "fig8", "5_2", "T3,4", "6_2"] {
        let k = knot(name);
        let nu = e.nu(&k).unwrap();
        assert_eq!(e.nu(&k.mirror()).unwrap(), -nu, "{name}");
        assert_eq!(e.nu(&k.concordance_inverse()).unwrap(), -nu, "{name}");
        assert_eq!(e.nu(&k.reverse()).unwrap(), nu, "{name}");
    }
}

#[test]
fn connected_sums_add() {
    let e = Engine::with_defaults();
    for (a, b) in [("T2,3", "T2,3"), ("T2,3", "fig8"), ("T2,3", "-T2,3"), ("T2,5", "-T2,3"), ("5_2", "fig8")] {
        let (ka, kb) = (knot(a), knot(b));
        let sum = e.nu(&ka.connected_sum(&kb)).unwrap();
        assert_eq!(sum, e.nu(&ka).unwrap() + e.nu(&kb).unwrap(), "{a} # {b}");
    }
}

#[test]
fn slice_knot_has_zero() {
    let e = Engine::with_defaults();
    assert_eq!(e.nu(&knot("6_1")).unwrap(), 0);
    assert_eq!(e.nu(&knot("T2,3#-T2,3")).unwrap(), 0);
}

#[test]
fn bounded_by_surface_genus() {
    let e = Engine::with_defaults();
    let matrices = [
        SeifertMatrix::trefoil(),
        SeifertMatrix::figure_eight(),
        SeifertMatrix::trefoil().negated().transpose(),
        SeifertMatrix::new(vec![vec![0, 2], vec![1, 0]]).unwrap(),
        SeifertMatrix::new(vec![vec![-1, 1, 0, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 1], vec![0, 0, 0, -1]]).unwrap(),
    ];
    for a in matrices {
        let bp = BandPresentation::realize(&a).unwrap();
        for variant in [bp.clone(), bp.insert_trefoil(0, -1).unwrap()] {
            let Ok(d) = boundary_diagram(&variant, 22) else { continue };
            let nu = e.nu(&d).unwrap();
            assert!(nu.unsigned_abs() as usize <= variant.genus(), "{a}: nu = {nu}");
        }
    }
}

#[test]
fn crossing_changes_lower_by_at_most_one() {
    let e = Engine::with_defaults();
    let mut changes = 0;
    for name in ["T2,3", "T2,5", "T2,7", "T3,4", "5_2", "6_2", "7_2", "fig8", "T3,5"] {
        let k = knot(name);
        let nu = e.nu(&k).unwrap();
        for (i, c) in k.crossings().iter().enumerate() {
            if !c.is_positive() {
                continue;
            }
            let changed = k.change_crossing(i).unwrap();
            let drop = nu - e.nu(&changed).unwrap();
            assert!((0..=1).contains(&drop), "{name} crossing {i}: drop {drop}");
            changes += 1;
        }
    }
    assert!(changes >= 20, "{changes}");
}

#[test]
fn backends_agree() {
    let e = Engine::with_defaults();
    let names = ["U", "T2,3", "-T2,3", "fig8", "5_2", "6_1", "6_3", "7_2", "T3,4", "T2,3#fig8", "T2,3#T2,3"];
    for name in names {
        let k = knot(name);
        let a = e.s_invariant(&k, Backend::Reference).unwrap();
        let b = e.s_invariant(&k, Backend::Optimized).unwrap();
        assert_eq!((a.s, a.q_min, a.q_max), (b.s, b.q_min, b.q_max), "{name}");
    }
}

#[test]
fn khovanov_euler_characteristic_is_jones() {
    let e = Engine::with_defaults();
    for name in ["T2,3", "-T2,3", "fig8", "5_2", "6_2", "T3,4", "7_1"] {
        let k = knot(name);
        let want = jones_in_q(&jones_polynomial(&k).unwrap());
        for backend in [Backend::Reference, Backend::Optimized] {
            let kh = e.khovanov_homology(&k, backend).unwrap();
            assert_eq!(graded_euler_characteristic(&kh), want, "{name} {backend:?}");
        }
    }
}

#[test]
fn lee_homology_has_two_generators() {
    for name in ["T2,3", "fig8", "5_2", "T3,4"] {
        let k = knot(name);
        let complex = Cube::new(&k, true, 12).unwrap().lee_complex(&Rational::from_int(1));
        let ranks = complex.ranks();
        assert_eq!(ranks.last().unwrap().1, 2, "{name}");
        let levels = complex.levels().unwrap();
        assert_eq!(levels.q_max - levels.q_min, 2, "{name}");
    }
}

#[test]
fn reidemeister_walks_keep_s() {
    let e = Engine::with_defaults();
    let knots: Vec<PlanarDiagram> = ["T2,3", "fig8", "5_2", "-T2,3"].iter().map(|n| knot(n)).collect();
    for seed in 0..200u64 {
        let k = &knots[seed as usize % knots.len()];
        let (walked, moves) = random_walk(k, seed, 15, k.crossing_count() + 6).unwrap();
        assert!(!moves.is_empty());
        let s = e.s_invariant(&walked, Backend::Optimized).unwrap().s;
        assert_eq!(s, e.report(k).unwrap().s, "seed {seed}: {moves:?}");
    }
}

#[test]
fn over_budget_is_an_error() {
    let e = Engine::with_defaults();
    let big = knot("T2,3#T2,3#T2,3#T2,3#T2,3");
    assert!(matches!(e.s_invariant(&big, Backend::Reference), Err(knotnu::Error::BudgetExceeded { .. })));
    assert_eq!(e.s_invariant(&big, Backend::Optimized).unwrap().nu, 5);
}
