use knotnu::diagram::{alexander_polynomial, knot_by_name};
use knotnu::harness::{check_corollary_band, demo_realization, Outcome};
use knotnu::lee::Engine;
use knotnu::seifert::{band_trade_sequence, boundary_diagram, Band, BandPresentation, SeifertMatrix};
use knotnu::tb::{builtin_fronts, check_tb_duality, exact_tb, tb_lower_bound, FrontDiagram};
use knotnu::Error;

#[test]
fn band_text_round_trip() {
    let text = "B1 framing=1 knot=T2,3\nB2 framing=-1 knot=U\nC 1 2 2\n";
    let bp = BandPresentation::parse(text).unwrap();
    assert_eq!(bp.to_text(), text);
    assert_eq!(bp.seifert_matrix().entries(), &[vec![1, 3], vec![2, -1]]);
    let inline = BandPresentation::parse("B1 framing=0 knot=pd:X(1,5,2,4)X(3,1,4,6)X(5,3,6,2)\nB2 framing=0 knot=U\n").unwrap();
    assert_eq!(inline.band(0).unwrap().knot.crossing_count(), 3);
}

#[test]
fn band_text_errors() {
    for bad in [
        "B1 framing=1\n",
        "B1 framing=x knot=U\nB2 framing=0 knot=U\n",
        "B1 framing=0 knot=U\nB3 framing=0 knot=U\n",
        "B1 framing=0 knot=U\nB2 framing=0 knot=U\nC 1 1 2\n",
        "B1 framing=0 knot=U\nB2 framing=0 knot=U\nQ\n",
    ] {
        assert!(BandPresentation::parse(bad).is_err(), "{bad}");
    }
    assert!(matches!(
        BandPresentation::parse("B1 framing=0 knot=9_42\nB2 framing=0 knot=U\n"),
        Err(Error::UnknownKnot(_))
    ));
}

#[test]
fn realize_is_exact() {
    for rows in [vec![vec![0, 1], vec![0, 0]], vec![vec![3, -2], vec![-3, 5]], vec![vec![-1, 1], vec![0, -1]]] {
        let a = SeifertMatrix::new(rows).unwrap();
        let bp = BandPresentation::realize(&a).unwrap();
        assert_eq!(bp.seifert_matrix(), a);
        if let Ok(d) = boundary_diagram(&bp, 30) {
            assert_eq!(alexander_polynomial(&d), a.alexander());
        }
    }
}

#[test]
fn trading_needs_equal_matrices() {
    let fig8 = BandPresentation::realize(&SeifertMatrix::figure_eight()).unwrap();
    let tref = BandPresentation::realize(&SeifertMatrix::trefoil()).unwrap();
    assert!(matches!(band_trade_sequence(&fig8, &tref), Err(Error::MatrixMismatch)));
    assert_eq!(band_trade_sequence(&fig8, &fig8).unwrap().len(), 1);
    let target = fig8.insert_trefoil(0, 1).unwrap().insert_trefoil(1, -1).unwrap();
    let seq = band_trade_sequence(&fig8, &target).unwrap();
    assert_eq!(seq.len(), 3);
    for pair in seq.windows(2) {
        let differing = pair[0].bands().iter().zip(pair[1].bands()).filter(|(a, b)| a != b).count();
        assert_eq!(differing, 1);
        assert_eq!(pair[1].seifert_matrix(), SeifertMatrix::figure_eight());
    }
}

#[test]
fn figure_eight_matrix_realizes_three_values() {
    let e = Engine::with_defaults();
    let a = SeifertMatrix::figure_eight();
    let real = demo_realization(&e, &a, 2, 22).unwrap();
    assert!(real.report().passed(), "{}", real.report());
    assert_eq!(real.nus, vec![1, 0, -1]);
    for bp in &real.sequence {
        assert_eq!(bp.seifert_matrix(), a);
    }
    let (_, k0) = real.knot_with_nu(0).unwrap();
    assert_eq!(alexander_polynomial(k0), a.alexander());
    let (plus, _) = real.knot_with_nu(1).unwrap();
    assert_eq!(plus.band(0).unwrap().knot.name(), Some("T2,3"));
}

#[test]
fn realization_only_at_genus_one() {
    let e = Engine::with_defaults();
    let a = SeifertMatrix::new(vec![vec![-1, 1, 0, 0], vec![0, -1, 0, 0], vec![0, 0, 1, 1], vec![0, 0, 0, -1]]).unwrap();
    assert!(matches!(demo_realization(&e, &a, 1, 22), Err(Error::SearchFailed(_))));
    let off = SeifertMatrix::new(vec![vec![0, 0], vec![1, 0]]).unwrap();
    assert!(matches!(demo_realization(&e, &off, 1, 22), Err(Error::NotSeifert(_))));
}

#[test]
fn band_modifications_move_nu_by_at_most_one() {
    let e = Engine::with_defaults();
    let fig8 = BandPresentation::realize(&SeifertMatrix::figure_eight()).unwrap();
    let mut clasped = fig8.clone();
    clasped.set_clasps(0, 1, -1).unwrap();
    let tied = fig8.band_modify(1, Band { framing: -1, knot: knot_by_name("-T2,3").unwrap() }).unwrap();
    for other in [&fig8, &clasped, &tied] {
        let c = check_corollary_band(&e, &fig8, other, 22).unwrap();
        assert_eq!(c.outcome, Outcome::Pass, "{}", c.detail);
    }
    assert!(matches!(check_corollary_band(&e, &fig8, &tied, 10), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn thurston_bennequin_values() {
    assert_eq!(tb_lower_bound("U").unwrap().tb, -1);
    assert_eq!(tb_lower_bound("T2,3").unwrap().tb, 1);
    assert_eq!(tb_lower_bound("-T2,3").unwrap().tb, -6);
    for (name, front) in builtin_fronts() {
        let tb = front.tb().unwrap();
        assert!(tb <= exact_tb(name).unwrap(), "{name}");
    }
    for name in ["U", "T2,3", "fig8", "T2,5"] {
        let dual = check_tb_duality(name).unwrap();
        assert!(dual.holds && dual.tb + dual.tb_mirror <= -1, "{name}");
    }
    assert!(matches!(tb_lower_bound("5_2"), Err(Error::UnknownKnot(_)) | Err(Error::MissingTb(_))));
}

#[test]
fn front_errors() {
    for bad in ["X 1 2", "LCUSP 1 3\nRCUSP 1 3", "LCUSP 1 2\nRCUSP 2 3", "LCUSP 1 2\nLCUSP 1 2\nRCUSP 1 2\nRCUSP 1 2", "HOOK 1 2"] {
        assert!(FrontDiagram::parse(bad).is_err(), "{bad}");
    }
    let f = FrontDiagram::parse("# unknot\nLCUSP 1 2\nRCUSP 1 2\n").unwrap();
    assert_eq!(f.tb().unwrap(), -1);
    assert!(f.resolve().unwrap().is_trivial());
}
