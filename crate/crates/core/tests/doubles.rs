use knotnu::diagram::{jones_polynomial, knot_by_name, PlanarDiagram};
use knotnu::harness::{check_theorem1, check_theorem2_bounds, scan_doubles, theorem1_sweep, Outcome};
use knotnu::lee::{Engine, EngineConfig};
use knotnu::satellite::{build_double, double_relation_witness, twist_step_witness, twisted_double, ClaspSign, DoubleSpec};

fn knot(name: &str) -> PlanarDiagram {
    knot_by_name(name).unwrap()
}

fn wide_engine() -> Engine {
    Engine::new(EngineConfig { optimized_budget: 34, ..EngineConfig::default() }).unwrap()
}

#[test]
fn crossing_counts_follow_the_formula() {
    for name in ["U", "T2,3", "-T2,3", "fig8", "5_2"] {
        let k = knot(name);
        for t in -3..=3 {
            for clasp in [ClaspSign::Positive, ClaspSign::Negative] {
                let spec = DoubleSpec::new(&k, t, clasp);
                let d = twisted_double(&spec).unwrap();
                let w = k.writhe();
                assert_eq!(d.crossing_count(), 4 * k.crossing_count() + 2 * (t - w).unsigned_abs() as usize + 2);
                assert_eq!(d.crossing_count(), spec.crossing_count());
                assert!(d.is_planar());
            }
        }
    }
}

#[test]
fn twist_and_clasp_signs() {
    for t in [-2, 0, 3] {
        for clasp in [ClaspSign::Positive, ClaspSign::Negative] {
            let dd = build_double(&DoubleSpec::new(&knot("U"), t, clasp)).unwrap();
            let signs = |ix: &[usize]| ix.iter().map(|&i| dd.diagram.crossings()[i].sign()).collect::<Vec<_>>();
            let twist = if t > 0 { -1 } else { 1 };
            assert!(signs(&dd.twist_crossings).iter().all(|&s| s == twist));
            assert_eq!(signs(&dd.clasp_crossings), vec![clasp.value(); 2]);
        }
    }
}

#[test]
fn small_doubles_are_known_knots() {
    let j = |d: &PlanarDiagram| jones_polynomial(d).unwrap();
    let d = |t, c| twisted_double(&DoubleSpec::new(&knot("U"), t, c)).unwrap();
    assert!(j(&d(0, ClaspSign::Positive)) == j(&knot("U")));
    assert_eq!(j(&d(-1, ClaspSign::Positive)), j(&knot("T2,3")));
    assert_eq!(j(&d(1, ClaspSign::Positive)), j(&knot("fig8")));
    assert_eq!(j(&d(1, ClaspSign::Negative)), j(&knot("-T2,3")));
}

#[test]
fn mirror_relation_holds() {
    for name in ["T2,3", "fig8"] {
        for t in [-1, 2] {
            let (lhs, rhs) = double_relation_witness(&knot(name), t).unwrap();
            assert_eq!(jones_polynomial(&lhs).unwrap(), jones_polynomial(&rhs).unwrap(), "{name} {t}");
        }
    }
}

#[test]
fn neighbouring_twists_differ_by_one_crossing_change() {
    let step = twist_step_witness(&knot("T2,3"), 1, ClaspSign::Positive).unwrap().unwrap();
    assert_eq!(
        jones_polynomial(&step.changed).unwrap(),
        jones_polynomial(&step.smaller).unwrap()
    );
    assert_eq!(step.larger.crossing_count(), step.changed.crossing_count());
}

#[test]
fn trefoil_scan() {
    let e = Engine::with_defaults();
    let scan = scan_doubles(&e, &knot("T2,3"), -1..=7, ClaspSign::Positive).unwrap();
    assert_eq!(scan.skipped(), 0);
    assert!(scan.rows.iter().all(|r| r.crossings <= 22));
    for r in &scan.rows {
        if r.t <= 1 {
            assert_eq!(r.nu, Some(1), "t = {}", r.t);
        }
        if r.t >= 6 {
            assert_eq!(r.nu, Some(0), "t = {}", r.t);
        }
    }
    assert_eq!(scan.nu_at(2), Some(1));
    assert!(scan.is_monotone() && scan.is_bounded());
    assert_eq!(scan.step_point(), Some(2));
    assert_eq!(scan.to_svg().matches(r#"class="step""#).count(), 1);
    let csv = scan.to_csv();
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.lines().nth(1).unwrap().starts_with("-1,1,2,22,"));
}

#[test]
fn scans_skip_rows_over_budget() {
    let e = Engine::with_defaults();
    let scan = scan_doubles(&e, &knot("T2,3"), -3..=0, ClaspSign::Positive).unwrap();
    assert_eq!(scan.skipped(), 2);
    assert_eq!(scan.rows[0].nu, None);
    assert_eq!(scan.rows[0].crossings, 26);
    assert!(scan.to_csv().contains("\n-3,,,26,"));
    assert!(scan.is_monotone());
}

#[test]
fn opposite_clasps_over_small_companions() {
    let e = wide_engine();
    let ks: Vec<PlanarDiagram> = ["U", "T2,3", "-T2,3", "fig8"].iter().map(|n| knot(n)).collect();
    let report = theorem1_sweep(&e, &ks, -3..=3).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.count(Outcome::Skip), 0);
    let triggered = report.checks.iter().filter(|c| c.detail.starts_with("nu(D+) = 1")).count();
    assert_eq!(triggered, 3 + 6 + 3);
}

#[test]
fn opposite_clasps_single_cases() {
    let e = Engine::with_defaults();
    let c = check_theorem1(&e, &knot("fig8"), -1).unwrap();
    assert_eq!((c.outcome, c.detail.as_str()), (Outcome::Pass, "nu(D+) = 1, nu(D-) = 0"));
}

#[test]
fn step_bounds_for_trefoils_and_figure_eight() {
    let e = wide_engine();
    // D-(K,t) is the mirror of D+(-K,-t), so each minus step is minus the
    // plus step of the mirror
    for (name, plus_step, minus_step) in [("T2,3", 2, 4), ("U", -1, 1), ("fig8", -1, 1), ("-T2,3", -4, -2)] {
        let k = knot(name);
        let (r, scan) = check_theorem2_bounds(&e, name, &k, ClaspSign::Positive).unwrap();
        assert!(r.passed() && r.count(Outcome::Skip) == 0, "{r}");
        assert_eq!(scan.step_point(), Some(plus_step), "{name}");
        let (r, scan) = check_theorem2_bounds(&e, name, &k, ClaspSign::Negative).unwrap();
        assert!(r.passed() && r.count(Outcome::Skip) == 0, "{r}");
        assert_eq!(scan.step_point(), Some(minus_step), "{name}");
    }
}
