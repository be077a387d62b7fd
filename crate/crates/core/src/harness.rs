//! Scans of twisted-double families and the checks run on them.

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::lee::Engine;
use crate::satellite::{twisted_double, ClaspSign, DoubleSpec};
use crate::seifert::{band_trade_sequence, boundary_diagram, BandPresentation, SeifertMatrix};
use crate::tb::{exact_tb, mirror_name};

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub t: i64,
    pub nu: Option<i64>,
    pub s: Option<i64>,
    pub crossings: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub companion: String,
    pub clasp: ClaspSign,
    /// sorted by `t`; rows over budget have no values
    pub rows: Vec<ScanRow>,
}

impl ScanResult {
    fn computed(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.rows.iter().filter_map(|r| r.nu.map(|nu| (r.t, nu)))
    }

    pub fn nu_at(&self, t: i64) -> Option<i64> {
        self.rows.iter().find(|r| r.t == t).and_then(|r| r.nu)
    }

    /// Largest computed `t` with `nu = 1` (for D+) or smallest with
    /// `nu = -1` (for D-).
    pub fn step_point(&self) -> Option<i64> {
        match self.clasp {
            ClaspSign::Positive => self.computed().filter(|&(_, nu)| nu == 1).map(|(t, _)| t).max(),
            ClaspSign::Negative => self.computed().filter(|&(_, nu)| nu == -1).map(|(t, _)| t).min(),
        }
    }

    pub fn is_monotone(&self) -> bool {
        let nus: Vec<i64> = self.computed().map(|(_, nu)| nu).collect();
        nus.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn is_bounded(&self) -> bool {
        self.computed().all(|(_, nu)| nu.abs() <= 1)
    }

    pub fn skipped(&self) -> usize {
        self.rows.iter().filter(|r| r.nu.is_none()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,nu,s,crossings,seconds\n");
        for r in &self.rows {
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{:.3}", r.t, opt(r.nu), opt(r.s), r.crossings, r.seconds);
        }
        out
    }

    /// Step plot of `nu` against `t`.
    pub fn to_svg(&self) -> String {
        let (w, h, margin) = (480.0, 240.0, 40.0);
        let pts: Vec<(i64, i64)> = self.computed().collect();
        let (t0, t1) = match (pts.first(), pts.last()) {
            (Some(a), Some(b)) => (a.0, b.0.max(a.0 + 1)),
            _ => (0, 1),
        };
        let x = |t: i64| margin + (t - t0) as f64 * (w - 2.0 * margin) / (t1 - t0) as f64;
        let y = |nu: i64| h / 2.0 - nu as f64 * (h / 2.0 - margin);
        let mut out = String::new();
        let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
        let _ = writeln!(
            out,
            r#"<text x="{margin}" y="20" font-family="sans-serif" font-size="12">nu(D{}({},t))</text>"#,
            self.clasp.symbol(),
            self.companion
        );
        let _ = writeln!(out, r#"<line x1="{margin}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#, y(0), w - margin, y(0));
        for nu in [-1, 0, 1] {
            let _ = writeln!(out, r#"<text x="10" y="{}" font-family="sans-serif" font-size="10">{nu}</text>"#, y(nu) + 4.0);
        }
        for pair in pts.windows(2) {
            let ((ta, na), (tb, nb)) = (pair[0], pair[1]);
            let _ = writeln!(
                out,
                r#"<line class="level" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black"/>"#,
                x(ta),
                y(na),
                x(tb),
                y(na)
            );
            if na != nb {
                let class = if nb < na { "step" } else { "rise" };
                let _ = writeln!(
                    out,
                    r#"<line class="{class}" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="red"/>"#,
                    x(tb),
                    y(na),
                    x(tb),
                    y(nb)
                );
            }
        }
        for &(t, nu) in &pts {
            let _ = writeln!(out, r#"<circle cx="{:.1}" cy="{:.1}" r="3"/>"#, x(t), y(nu));
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{}" font-family="sans-serif" font-size="10" text-anchor="middle">{t}</text>"#,
                x(t),
                h - 10.0
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// `nu(D(K,t))` for every `t` in the range; values over the engine budget
/// are left empty.
pub fn scan_doubles(
    engine: &Engine,
    companion: &PlanarDiagram,
    t_range: RangeInclusive<i64>,
    clasp: ClaspSign,
) -> Result<ScanResult> {
    let ts: Vec<i64> = t_range.collect();
    let rows: Vec<Result<ScanRow>> = ts
        .par_iter()
        .map(|&t| {
            let d = twisted_double(&DoubleSpec::new(companion, t, clasp))?;
            let crossings = d.crossing_count();
            match engine.report(&d) {
                Ok(r) => Ok(ScanRow { t, nu: Some(r.nu), s: Some(r.s), crossings, seconds: r.seconds }),
                Err(Error::BudgetExceeded { .. }) => Ok(ScanRow { t, nu: None, s: None, crossings, seconds: 0.0 }),
                Err(e) => Err(e),
            }
        })
        .collect();
    Ok(ScanResult {
        companion: companion.name().unwrap_or("K").to_string(),
        clasp,
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// not run, for instance over budget
    Skip,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: if passed { Outcome::Pass } else { Outcome::Fail }, detail: detail.into() }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Skip, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub id: String,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn new(id: impl Into<String>) -> Self {
        TheoremReport { id: id.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: TheoremReport) {
        self.checks.extend(other.checks);
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.checks.iter().filter(|c| c.outcome == outcome).count()
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skip => "SKIP",
            };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        writeln!(
            f,
            "{} {}: {} passed, {} failed, {} skipped",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Skip)
        )
    }
}

fn nu_or_skip(engine: &Engine, d: &PlanarDiagram) -> Result<Option<i64>> {
    match engine.nu(d) {
        Ok(nu) => Ok(Some(nu)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// If `nu(D+(K,t)) = ±1` then `nu(D-(K,t)) = 0`.
pub fn check_theorem1(engine: &Engine, companion: &PlanarDiagram, t: i64) -> Result<Check> {
    let name = format!("{} t={t}", companion.name().unwrap_or("K"));
    let plus = twisted_double(&DoubleSpec::new(companion, t, ClaspSign::Positive))?;
    let Some(nu_plus) = nu_or_skip(engine, &plus)? else {
        return Ok(Check::skipped(name, format!("D+ has {} crossings", plus.crossing_count())));
    };
    if nu_plus == 0 {
        return Ok(Check::new(name, true, "nu(D+) = 0, nothing to check"));
    }
    let minus = twisted_double(&DoubleSpec::new(companion, t, ClaspSign::Negative))?;
    let Some(nu_minus) = nu_or_skip(engine, &minus)? else {
        return Ok(Check::skipped(name, format!("D- has {} crossings", minus.crossing_count())));
    };
    Ok(Check::new(
        name,
        nu_plus.abs() == 1 && nu_minus == 0,
        format!("nu(D+) = {nu_plus}, nu(D-) = {nu_minus}"),
    ))
}

pub fn theorem1_sweep(
    engine: &Engine,
    companions: &[PlanarDiagram],
    t_range: RangeInclusive<i64>,
) -> Result<TheoremReport> {
    let jobs: Vec<(&PlanarDiagram, i64)> =
        companions.iter().flat_map(|k| t_range.clone().map(move |t| (k, t))).collect();
    let checks: Vec<Result<Check>> = jobs.par_iter().map(|&(k, t)| check_theorem1(engine, k, t)).collect();
    let mut report = TheoremReport::new("thm1");
    for c in checks {
        report.push(c?);
    }
    Ok(report)
}

/// `TB(K) <= t_K < -TB(-K)` from a scan over `[TB(K) - 1, -TB(-K) + 1]`,
/// and the mirrored statement for `D-`: `nu(D-(K,t))` is 0 up to `TB(K)`
/// and -1 from `-TB(-K)` on.
pub fn check_theorem2_bounds(
    engine: &Engine,
    name: &str,
    companion: &PlanarDiagram,
    clasp: ClaspSign,
) -> Result<(TheoremReport, ScanResult)> {
    let lo = exact_tb(name).ok_or_else(|| Error::MissingTb(name.to_string()))?;
    let mirror = mirror_name(name);
    let hi = -exact_tb(&mirror).ok_or(Error::MissingTb(mirror))?;
    let scan = scan_doubles(engine, companion, lo - 1..=hi + 1, clasp)?;
    let mut report = TheoremReport::new(format!("thm2 {name} D{}", clasp.symbol()));
    let (at_lo, at_hi) = match clasp {
        ClaspSign::Positive => (1, 0),
        ClaspSign::Negative => (0, -1),
    };
    report.push(Check::new("monotone", scan.is_monotone(), format!("{} rows, {} skipped", scan.rows.len(), scan.skipped())));
    report.push(Check::new("bounded", scan.is_bounded(), "values in {-1,0,1}"));
    for (t, want) in [(lo, at_lo), (hi, at_hi)] {
        match scan.nu_at(t) {
            Some(nu) => report.push(Check::new(format!("nu at t={t}"), nu == want, format!("nu = {nu}, expected {want}"))),
            None => report.push(Check::skipped(format!("nu at t={t}"), "over budget")),
        }
    }
    let step = scan.step_point();
    let endpoints_ok = [lo, hi].iter().all(|&t| scan.nu_at(t).is_some());
    let (in_interval, interval) = match clasp {
        ClaspSign::Positive => (step.is_some_and(|s| lo <= s && s < hi), format!("[{lo}, {hi})")),
        ClaspSign::Negative => (step.is_some_and(|s| lo < s && s <= hi), format!("({lo}, {hi}]")),
    };
    let shown = step.map(|s| s.to_string()).unwrap_or_else(|| "not in range".into());
    let detail = format!("step at {shown}, interval {interval}");
    if endpoints_ok {
        report.push(Check::new("step point", in_interval, detail));
    } else {
        report.push(Check::skipped("step point", detail));
    }
    Ok((report, scan))
}

/// `|nu(K) - nu(K')| <= 1` for boundaries of presentations differing in at
/// most one band.
pub fn check_corollary_band(
    engine: &Engine,
    bp: &BandPresentation,
    modified: &BandPresentation,
    budget: usize,
) -> Result<Check> {
    let differing = bp.bands().iter().zip(modified.bands()).filter(|(a, b)| a != b).count();
    let same_shape = bp.genus() == modified.genus() && differing <= 1;
    if !same_shape {
        return Ok(Check::new("band modification", false, format!("{differing} bands differ")));
    }
    let a = engine.nu(&boundary_diagram(bp, budget)?)?;
    let b = engine.nu(&boundary_diagram(modified, budget)?)?;
    Ok(Check::new("band modification", (a - b).abs() <= 1, format!("nu {a} -> {b}")))
}

/// Knots `K_1, K_0, K_-1` with Seifert matrix `A` and `nu = 1, 0, -1`,
/// joined by single band modifications.
#[derive(Clone, Debug)]
pub struct Realization {
    pub matrix: SeifertMatrix,
    /// from `K_1` to `K_-1`
    pub sequence: Vec<BandPresentation>,
    pub knots: Vec<PlanarDiagram>,
    pub nus: Vec<i64>,
}

impl Realization {
    pub fn knot_with_nu(&self, a: i64) -> Option<(&BandPresentation, &PlanarDiagram)> {
        let i = self.nus.iter().position(|&nu| nu == a)?;
        Some((&self.sequence[i], &self.knots[i]))
    }

    pub fn report(&self) -> TheoremReport {
        let mut r = TheoremReport::new("thm3");
        let matrices_ok = self.sequence.iter().all(|bp| bp.seifert_matrix() == self.matrix);
        r.push(Check::new("seifert matrix", matrices_ok, format!("A = {} throughout", self.matrix)));
        let g = self.matrix.genus() as i64;
        let expected: Vec<i64> = (-g..=g).rev().collect();
        r.push(Check::new("nu values", self.nus == expected, format!("{:?}", self.nus)));
        let single = self
            .sequence
            .windows(2)
            .all(|w| w[0].bands().iter().zip(w[1].bands()).filter(|(a, b)| a != b).count() == 1);
        r.push(Check::new("single band modifications", single, format!("{} steps", self.sequence.len() - 1)));
        let tight = self.nus.windows(2).all(|w| (w[0] - w[1]).abs() == 1);
        r.push(Check::new("unit steps", tight, "|nu(K) - nu(K')| = 1 at each step"));
        r
    }
}

/// Build `K_1` and `K_-1` for a genus one `A` by tying trefoils of each
/// handedness into the bands, trying at most `cap` trefoils per band, and
/// trade the bands of one for the other.
pub fn demo_realization(engine: &Engine, a: &SeifertMatrix, cap: usize, budget: usize) -> Result<Realization> {
    if a.genus() != 1 {
        return Err(Error::SearchFailed(format!("only genus one is supported, got genus {}", a.genus())));
    }
    let base = BandPresentation::realize(a)?;
    let with = |band: usize, handed: i8, n: usize| -> Result<BandPresentation> {
        (0..n).try_fold(base.clone(), |bp, _| bp.insert_trefoil(band, handed))
    };
    let nu_of = |bp: &BandPresentation| -> Result<Option<(PlanarDiagram, i64)>> {
        let d = match boundary_diagram(bp, budget) {
            Ok(d) => d,
            Err(Error::BudgetExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(nu_or_skip(engine, &d)?.map(|nu| (d, nu)))
    };
    for n_plus in 1..=cap {
        for n_minus in 1..=cap {
            for plus_band in 0..2 {
                let minus_band = 1 - plus_band;
                let source = with(plus_band, 1, n_plus)?;
                let target = with(minus_band, -1, n_minus)?;
                let sequence = band_trade_sequence(&source, &target)?;
                let mut knots = Vec::new();
                let mut nus = Vec::new();
                for bp in &sequence {
                    match nu_of(bp)? {
                        Some((d, nu)) => {
                            knots.push(d);
                            nus.push(nu);
                        }
                        None => break,
                    }
                }
                if nus == [1, 0, -1] {
                    return Ok(Realization { matrix: a.clone(), sequence, knots, nus });
                }
            }
        }
    }
    Err(Error::SearchFailed(format!("no trefoil insertion pattern with at most {cap} trefoils per band worked")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::knot_by_name;

    #[test]
    fn unknot_scan() {
        let e = Engine::with_defaults();
        let s = scan_doubles(&e, &knot_by_name("U").unwrap(), -4..=4, ClaspSign::Positive).unwrap();
        let nus: Vec<i64> = s.rows.iter().map(|r| r.nu.unwrap()).collect();
        assert_eq!(nus, vec![1, 1, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(s.step_point(), Some(-1));
        assert!(s.is_monotone() && s.is_bounded());
        let csv = s.to_csv();
        assert!(csv.starts_with("t,nu,s,crossings,seconds\n-4,1,2,10,"));
        assert_eq!(s.to_svg().matches(r#"class="step""#).count(), 1);
    }

    #[test]
    fn empty_scan_csv() {
        let e = Engine::with_defaults();
        #[allow(clippy::reversed_empty_ranges)]
        let s = scan_doubles(&e, &knot_by_name("U").unwrap(), 1..=0, ClaspSign::Positive).unwrap();
        assert_eq!(s.to_csv(), "t,nu,s,crossings,seconds\n");
        assert_eq!(s.step_point(), None);
    }

    #[test]
    fn opposite_clasp_cases() {
        let e = Engine::with_defaults();
        let u = knot_by_name("U").unwrap();
        let c = check_theorem1(&e, &u, -2).unwrap();
        assert_eq!(c.outcome, Outcome::Pass);
        assert_eq!(c.detail, "nu(D+) = 1, nu(D-) = 0");
        assert_eq!(check_theorem1(&e, &u, 0).unwrap().detail, "nu(D+) = 0, nothing to check");
        let t = check_theorem1(&e, &knot_by_name("T2,3").unwrap(), 0).unwrap();
        assert_eq!(t.outcome, Outcome::Pass);
        assert_eq!(check_theorem1(&e, &knot_by_name("T2,3").unwrap(), -5).unwrap().outcome, Outcome::Skip);
    }

    #[test]
    fn step_bounds_unknot_both_clasps() {
        let e = Engine::with_defaults();
        let u = knot_by_name("U").unwrap();
        let (r, scan) = check_theorem2_bounds(&e, "U", &u, ClaspSign::Positive).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(scan.step_point(), Some(-1));
        let (r, scan) = check_theorem2_bounds(&e, "U", &u, ClaspSign::Negative).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(scan.step_point(), Some(1));
        assert!(matches!(check_theorem2_bounds(&e, "5_2", &u, ClaspSign::Positive), Err(Error::MissingTb(_))));
    }

    #[test]
    fn band_modification_checks() {
        let e = Engine::with_defaults();
        let bp = BandPresentation::realize(&SeifertMatrix::trefoil()).unwrap();
        let same = check_corollary_band(&e, &bp, &bp, 22).unwrap();
        assert_eq!((same.outcome, same.detail.as_str()), (Outcome::Pass, "nu 1 -> 1"));
        let up = bp.insert_trefoil(0, -1).unwrap();
        assert_eq!(check_corollary_band(&e, &bp, &up, 40).unwrap().outcome, Outcome::Pass);
        let two = up.insert_trefoil(1, 1).unwrap();
        assert_eq!(check_corollary_band(&e, &bp, &two, 60).unwrap().outcome, Outcome::Fail);
    }

    #[test]
    fn figure_eight_realization() {
        let e = Engine::with_defaults();
        let r = demo_realization(&e, &SeifertMatrix::figure_eight(), 2, 22).unwrap();
        assert!(r.report().passed(), "{}", r.report());
        assert_eq!(r.nus, vec![1, 0, -1]);
        assert!(r.knot_with_nu(0).is_some());
    }
}
