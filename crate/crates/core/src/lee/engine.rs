//! Front door for invariant computations: backend choice, coefficient
//! field, sign normalization, result cache and the append-only log.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use parking_lot::{Mutex, RwLock};

use crate::arith::{CoefficientField, Field, Fp, Rational};
use crate::diagram::{canonical_hash, knot_by_name, LaurentPolynomial, PlanarDiagram};
use crate::error::{Error, Result};
use crate::lee::cube::{Cube, CUBE_BUDGET};
use crate::lee::filtration::FiltrationLevels;
use crate::lee::scanner::{scan, SCAN_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Reference,
    Optimized,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Reference => "reference",
            Backend::Optimized => "optimized",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "reference" | "cube" => Some(Backend::Reference),
            "optimized" | "scan" => Some(Backend::Optimized),
            _ => None,
        }
    }
}

pub const LOG_HEADER: &str = "hash,s,nu,q_min,q_max,backend,seconds";

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub hash: String,
    pub name: Option<String>,
    pub s: i64,
    pub nu: i64,
    pub q_min: i64,
    pub q_max: i64,
    pub crossings: usize,
    pub backend: Backend,
    pub seconds: f64,
    /// the normalization sign in `nu = sign * s / 2`
    pub sign: i64,
}

impl InvariantReport {
    pub fn log_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6}",
            self.hash,
            self.s,
            self.nu,
            self.q_min,
            self.q_max,
            self.backend.name(),
            self.seconds
        )
    }

    pub fn text_block(&self) -> String {
        format!(
            "knot: {}\nhash: {}\ncrossings: {}\ns: {}\nnu: {} (sign {:+})\nq_min: {}\nq_max: {}\nbackend: {}\nseconds: {:.3}\n",
            self.name.as_deref().unwrap_or("-"),
            self.hash,
            self.crossings,
            self.s,
            self.nu,
            self.sign,
            self.q_min,
            self.q_max,
            self.backend.name(),
            self.seconds
        )
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub reference_budget: usize,
    pub optimized_budget: usize,
    pub field: CoefficientField,
    pub cache_path: Option<PathBuf>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            reference_budget: CUBE_BUDGET,
            optimized_budget: SCAN_BUDGET,
            field: CoefficientField::Rational,
            cache_path: None,
        }
    }
}

pub struct Engine {
    config: EngineConfig,
    sign: i64,
    cache: RwLock<HashMap<String, InvariantReport>>,
    log: Option<Mutex<File>>,
}

fn levels_in<F: Field>(d: &PlanarDiagram, unit: &F, backend: Backend, budget: usize) -> Result<FiltrationLevels> {
    match backend {
        Backend::Reference => Cube::new(d, true, budget)?.lee_complex(unit).levels(),
        Backend::Optimized => scan(d, unit, budget)?.lee.levels(),
    }
}

fn khovanov_in<F: Field>(
    d: &PlanarDiagram,
    unit: &F,
    backend: Backend,
    budget: usize,
) -> Result<BTreeMap<(i64, i64), usize>> {
    match backend {
        Backend::Reference => Ok(Cube::new(d, false, budget)?.homology(unit)),
        Backend::Optimized => Ok(scan(d, unit, budget)?.khovanov),
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        let mut engine = Engine { config, sign: 1, cache: RwLock::new(HashMap::new()), log: None };
        let trefoil = knot_by_name("T2,3")?;
        let s = engine.levels(&trefoil, Backend::Optimized)?.s();
        if s.abs() != 2 {
            return Err(Error::Internal(format!("s of the positive trefoil came out as {s}")));
        }
        engine.sign = s.signum();
        if let Some(path) = engine.config.cache_path.clone() {
            engine.load_log(&path)?;
            let fresh = !path.exists() || std::fs::metadata(&path)?.len() == 0;
            let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
            if fresh {
                writeln!(f, "{LOG_HEADER}")?;
            }
            engine.log = Some(Mutex::new(f));
        }
        Ok(engine)
    }

    pub fn with_defaults() -> Self {
        Self::new(EngineConfig::default()).expect("default engine")
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    fn budget(&self, backend: Backend) -> usize {
        match backend {
            Backend::Reference => self.config.reference_budget,
            Backend::Optimized => self.config.optimized_budget,
        }
    }

    fn load_log(&self, path: &Path) -> Result<()> {
        if !path.exists() {
            return Ok(());
        }
        let mut cache = self.cache.write();
        for line in BufReader::new(File::open(path)?).lines() {
            let line = line?;
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 7 || cols[0] == "hash" {
                continue;
            }
            let (Ok(s), Ok(q_min), Ok(q_max), Some(backend), Ok(seconds)) = (
                cols[1].parse::<i64>(),
                cols[3].parse::<i64>(),
                cols[4].parse::<i64>(),
                Backend::parse(cols[5]),
                cols[6].parse::<f64>(),
            ) else {
                log::warn!("skipping malformed cache row `{line}`");
                continue;
            };
            cache.insert(
                cols[0].to_string(),
                InvariantReport {
                    hash: cols[0].to_string(),
                    name: None,
                    s,
                    nu: self.sign * s / 2,
                    q_min,
                    q_max,
                    crossings: 0,
                    backend,
                    seconds,
                    sign: self.sign,
                },
            );
        }
        Ok(())
    }

    fn levels(&self, d: &PlanarDiagram, backend: Backend) -> Result<FiltrationLevels> {
        let budget = self.budget(backend);
        match self.config.field {
            CoefficientField::Rational => levels_in(d, &Rational::from_int(1), backend, budget),
            CoefficientField::Prime(p) => levels_in(d, &Fp::new(1, p), backend, budget),
        }
    }

    /// Compute afresh with the given backend and record the result.
    pub fn s_invariant(&self, d: &PlanarDiagram, backend: Backend) -> Result<InvariantReport> {
        let start = Instant::now();
        let levels = self.levels(d, backend)?;
        let s = levels.s();
        let report = InvariantReport {
            hash: canonical_hash(d),
            name: d.name().map(str::to_string),
            s,
            nu: self.sign * s / 2,
            q_min: levels.q_min,
            q_max: levels.q_max,
            crossings: d.crossing_count(),
            backend,
            seconds: start.elapsed().as_secs_f64(),
            sign: self.sign,
        };
        self.cache.write().insert(report.hash.clone(), report.clone());
        if let Some(log) = &self.log {
            writeln!(log.lock(), "{}", report.log_row())?;
        }
        Ok(report)
    }

    /// Cached report, computed with the optimized backend on a miss.
    pub fn report(&self, d: &PlanarDiagram) -> Result<InvariantReport> {
        let hash = canonical_hash(d);
        if let Some(r) = self.cache.read().get(&hash) {
            let mut r = r.clone();
            r.name = d.name().map(str::to_string);
            r.crossings = d.crossing_count();
            return Ok(r);
        }
        self.s_invariant(d, Backend::Optimized)
    }

    pub fn nu(&self, d: &PlanarDiagram) -> Result<i64> {
        Ok(self.report(d)?.nu)
    }

    pub fn cached_count(&self) -> usize {
        self.cache.read().len()
    }

    pub fn khovanov_homology(&self, d: &PlanarDiagram, backend: Backend) -> Result<BTreeMap<(i64, i64), usize>> {
        let budget = self.budget(backend);
        match self.config.field {
            CoefficientField::Rational => khovanov_in(d, &Rational::from_int(1), backend, budget),
            CoefficientField::Prime(p) => khovanov_in(d, &Fp::new(1, p), backend, budget),
        }
    }
}

/// `sum (-1)^h q^j dim Kh^{h,j}`.
pub fn graded_euler_characteristic(kh: &BTreeMap<(i64, i64), usize>) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        kh.iter().map(|(&(h, q), &dim)| (q, if h.rem_euclid(2) == 0 { dim as i64 } else { -(dim as i64) })),
    )
}

/// The unnormalized Jones polynomial `(q + q^-1) V` with `x = q^-2`.
pub fn jones_in_q(jones: &LaurentPolynomial) -> LaurentPolynomial {
    let q_form = jones.substitute_power(-2);
    &q_form * &LaurentPolynomial::from_terms([(1, 1), (-1, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::jones_polynomial;

    #[test]
    fn normalization_sign_and_values() {
        let e = Engine::with_defaults();
        assert_eq!(e.sign(), 1);
        let r = e.s_invariant(&knot_by_name("T2,5").unwrap(), Backend::Reference).unwrap();
        assert_eq!((r.s, r.nu, r.q_max - r.q_min), (4, 2, 2));
        assert_eq!(e.nu(&knot_by_name("U").unwrap()).unwrap(), 0);
        assert_eq!(e.nu(&knot_by_name("fig8").unwrap()).unwrap(), 0);
    }

    #[test]
    fn euler_characteristic_is_jones() {
        let e = Engine::with_defaults();
        for name in ["U", "T2,3", "fig8"] {
            let d = knot_by_name(name).unwrap();
            let kh = e.khovanov_homology(&d, Backend::Reference).unwrap();
            assert_eq!(graded_euler_characteristic(&kh), jones_in_q(&jones_polynomial(&d).unwrap()), "{name}");
        }
    }

    #[test]
    fn prime_field() {
        let e = Engine::new(EngineConfig { field: CoefficientField::Prime(7), ..Default::default() }).unwrap();
        assert_eq!(e.nu(&knot_by_name("T3,4").unwrap()).unwrap(), 3);
    }

    #[test]
    fn budgets_are_enforced() {
        let e = Engine::with_defaults();
        let big = knot_by_name("T2,7#T2,7").unwrap();
        assert!(matches!(e.s_invariant(&big, Backend::Reference), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn log_round_trip() {
        let dir = std::env::temp_dir().join(format!("knotnu-log-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let cfg = EngineConfig { cache_path: Some(dir.clone()), ..Default::default() };
        {
            let e = Engine::new(cfg.clone()).unwrap();
            e.nu(&knot_by_name("T2,3").unwrap()).unwrap();
        }
        let text = std::fs::read_to_string(&dir).unwrap();
        assert!(text.starts_with(LOG_HEADER));
        let e = Engine::new(cfg).unwrap();
        assert_eq!(e.cached_count(), 1);
        let _ = std::fs::remove_file(&dir);
    }
}
