use proptest::prelude::*;

use knotnu::diagram::{braid_closure, canonical_hash, jones_polynomial, random_walk, LaurentPolynomial, PlanarDiagram};
use knotnu::lee::Engine;
use knotnu::seifert::{BandPresentation, SeifertMatrix};
use knotnu::tb::enumerate_fronts;

fn braid_knot() -> impl Strategy<Value = PlanarDiagram> {
    (2usize..=4, prop::collection::vec((1i32..=3, any::<bool>()), 1..=8)).prop_filter_map("not a knot", |(n, word)| {
        let word: Vec<i32> = word.into_iter().map(|(g, pos)| {
            let g = 1 + (g - 1) % (n as i32 - 1);
            if pos { g } else { -g }
        }).collect();
        braid_closure(n, &word).ok()
    })
}

fn genus_one_matrix() -> impl Strategy<Value = SeifertMatrix> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| SeifertMatrix::new(vec![vec![a, b + 1], vec![b, c]]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realize_round_trips(a in genus_one_matrix(), d in genus_one_matrix(), x in -2i64..=2, y in -2i64..=2) {
        let mut rows = vec![vec![0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                rows[i][j] = a.entries()[i][j];
                rows[i + 2][j + 2] = d.entries()[i][j];
            }
        }
        rows[0][2] = x;
        rows[2][0] = x;
        rows[1][3] = y;
        rows[3][1] = y;
        let m = SeifertMatrix::new(rows).unwrap();
        let bp = BandPresentation::realize(&m).unwrap();
        prop_assert_eq!(bp.seifert_matrix(), m.clone());
        let text = bp.to_text();
        prop_assert_eq!(BandPresentation::parse(&text).unwrap().seifert_matrix(), m);
    }

    #[test]
    fn alexander_is_symmetric_and_normalized(a in genus_one_matrix()) {
        let p = a.alexander();
        let flipped = LaurentPolynomial::from_terms(p.terms().map(|(e, c)| (-e, c)));
        prop_assert_eq!(&p, &flipped);
        prop_assert_eq!(p.terms().map(|(_, c)| c).sum::<i64>(), 1);
        prop_assert!(a.signature().abs() <= 2);
        prop_assert_eq!(a.signature(), -a.negated().signature());
    }

    #[test]
    fn nu_is_odd_under_mirroring(k in braid_knot()) {
        let e = Engine::with_defaults();
        let nu = e.nu(&k).unwrap();
        prop_assert_eq!(e.nu(&k.mirror()).unwrap(), -nu);
        prop_assert_eq!(e.nu(&k.concordance_inverse()).unwrap(), -nu);
    }

    #[test]
    fn positive_to_negative_changes(k in braid_knot(), pick in any::<prop::sample::Index>()) {
        let positives: Vec<usize> = (0..k.crossing_count()).filter(|&i| k.crossings()[i].is_positive()).collect();
        prop_assume!(!positives.is_empty());
        let e = Engine::with_defaults();
        let changed = k.change_crossing(*pick.get(&positives)).unwrap();
        let drop = e.nu(&k).unwrap() - e.nu(&changed).unwrap();
        prop_assert!((0..=1).contains(&drop));
    }

    #[test]
    fn walks_keep_jones(k in braid_knot(), seed in any::<u64>(), steps in 1usize..20) {
        let (walked, _) = random_walk(&k, seed, steps, k.crossing_count() + 4).unwrap();
        prop_assert!(walked.is_planar());
        prop_assert_eq!(jones_polynomial(&walked).unwrap(), jones_polynomial(&k).unwrap());
    }

    #[test]
    fn pd_text_round_trips(k in braid_knot()) {
        let back = PlanarDiagram::parse(&k.to_pd_string()).unwrap();
        prop_assert_eq!(canonical_hash(&back), canonical_hash(&k));
        prop_assert_eq!(canonical_hash(&k.relabeled()), canonical_hash(&k));
        prop_assert_eq!(back.writhe(), k.writhe());
    }
}

#[test]
fn small_fronts_round_trip_and_bound_tb() {
    for f in enumerate_fronts(2, 2) {
        let again = knotnu::tb::FrontDiagram::parse(&f.to_string()).unwrap();
        assert_eq!(again, f);
        if f.resolve().unwrap().is_trivial() {
            assert!(f.tb().unwrap() <= -1, "{f}");
        }
    }
}
