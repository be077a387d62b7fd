//! Thurston-Bennequin numbers of front diagrams.
//!
//! A front is read left to right as events on numbered horizontal strands,
//! strand 1 on top: a left cusp opens two adjacent strands, a right cusp
//! closes them, a crossing swaps them. At a crossing the strand climbing
//! towards the top (slope +1) passes under the descending one.

use std::fmt;

use crate::diagram::builder::DiagramBuilder;
use crate::diagram::{knot_by_name, PlanarDiagram};
use crate::error::{Error, Result};

/// Events carry the upper of the two strand positions, counted from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrontEvent {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontDiagram {
    events: Vec<FrontEvent>,
}

// crossing slots, strands travelling east
const SW: u8 = 0;
const SE: u8 = 1;
const NE: u8 = 2;
const NW: u8 = 3;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl FrontDiagram {
    /// Checks that every event fits the strands present, that everything
    /// closes up, and that the result is one component.
    pub fn new(events: Vec<FrontEvent>) -> Result<Self> {
        let mut ids: Vec<usize> = Vec::new();
        let mut parent: Vec<usize> = Vec::new();
        for (k, ev) in events.iter().enumerate() {
            let bad = |msg: String| Error::InvalidFront(format!("event {}: {msg}", k + 1));
            match *ev {
                FrontEvent::LeftCusp(p) => {
                    if p > ids.len() {
                        return Err(bad(format!("left cusp at {} with {} strands", p + 1, ids.len())));
                    }
                    let id = parent.len();
                    parent.push(id);
                    ids.splice(p..p, [id, id]);
                }
                FrontEvent::RightCusp(p) | FrontEvent::Crossing(p) if p + 1 >= ids.len() => {
                    return Err(bad(format!("strands {} and {} not both present", p + 1, p + 2)));
                }
                FrontEvent::RightCusp(p) => {
                    let (a, b) = (find(&mut parent, ids[p]), find(&mut parent, ids[p + 1]));
                    parent[a] = b;
                    ids.drain(p..p + 2);
                }
                FrontEvent::Crossing(p) => ids.swap(p, p + 1),
            }
        }
        if !ids.is_empty() {
            return Err(Error::InvalidFront(format!("{} strands left open", ids.len())));
        }
        if parent.is_empty() {
            return Err(Error::InvalidFront("empty front".into()));
        }
        let roots = (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count();
        if roots != 1 {
            return Err(Error::InvalidFront(format!("front has {roots} components")));
        }
        Ok(FrontDiagram { events })
    }

    /// `LCUSP i j`, `RCUSP i j` or `X i j` with `j = i + 1`, one per line or
    /// separated by `;`. Strands are numbered from 1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut events = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap();
            for item in line.split(';') {
                let words: Vec<&str> = item.split_whitespace().collect();
                if words.is_empty() {
                    continue;
                }
                let bad = || Error::InvalidFront(format!("cannot read `{}`", item.trim()));
                if words.len() != 3 {
                    return Err(bad());
                }
                let i: usize = words[1].parse().map_err(|_| bad())?;
                let j: usize = words[2].parse().map_err(|_| bad())?;
                if i == 0 || j != i + 1 {
                    return Err(Error::InvalidFront(format!("strands {i} and {j} are not adjacent")));
                }
                events.push(match words[0] {
                    "LCUSP" => FrontEvent::LeftCusp(i - 1),
                    "RCUSP" => FrontEvent::RightCusp(i - 1),
                    "X" => FrontEvent::Crossing(i - 1),
                    _ => return Err(bad()),
                });
            }
        }
        Self::new(events)
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn right_cusps(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, FrontEvent::RightCusp(_))).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, FrontEvent::Crossing(_))).count()
    }

    /// The knot diagram with the forced crossing choices.
    pub fn resolve(&self) -> Result<PlanarDiagram> {
        if self.crossing_count() == 0 {
            return Ok(PlanarDiagram::unknot());
        }
        let mut b = DiagramBuilder::new();
        let slot = DiagramBuilder::slot;
        let mut open = Vec::new();
        for ev in &self.events {
            match *ev {
                FrontEvent::LeftCusp(p) => {
                    let j = b.joint();
                    open.splice(p..p, [slot(j, 0), slot(j, 1)]);
                }
                FrontEvent::RightCusp(p) => {
                    b.connect(open[p], open[p + 1]);
                    open.drain(p..p + 2);
                }
                FrontEvent::Crossing(p) => {
                    // the strand from SW to NE climbs, so it is the under one
                    let c = b.crossing(0);
                    b.connect(open[p], slot(c, NW));
                    b.connect(open[p + 1], slot(c, SW));
                    open[p] = slot(c, NE);
                    open[p + 1] = slot(c, SE);
                }
            }
        }
        Ok(b.finish()?.diagram)
    }

    /// Writhe of the resolved diagram minus the number of right cusps.
    pub fn tb(&self) -> Result<i64> {
        Ok(self.resolve()?.writhe() - self.right_cusps() as i64)
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ev in &self.events {
            let (word, p) = match *ev {
                FrontEvent::LeftCusp(p) => ("LCUSP", p),
                FrontEvent::RightCusp(p) => ("RCUSP", p),
                FrontEvent::Crossing(p) => ("X", p),
            };
            writeln!(f, "{word} {} {}", p + 1, p + 2)?;
        }
        Ok(())
    }
}

/// Every valid front with at most `max_crossings` crossings and
/// `max_cusps` left cusps, in a fixed order.
pub fn enumerate_fronts(max_crossings: usize, max_cusps: usize) -> Vec<FrontDiagram> {
    fn go(
        events: &mut Vec<FrontEvent>,
        strands: usize,
        crossings: usize,
        cusps: usize,
        limits: (usize, usize),
        out: &mut Vec<FrontDiagram>,
    ) {
        if strands == 0 && !events.is_empty() {
            if let Ok(f) = FrontDiagram::new(events.clone()) {
                out.push(f);
            }
            return;
        }
        if cusps < limits.1 {
            for p in 0..=strands {
                events.push(FrontEvent::LeftCusp(p));
                go(events, strands + 2, crossings, cusps + 1, limits, out);
                events.pop();
            }
        }
        for p in 0..strands.saturating_sub(1) {
            events.push(FrontEvent::RightCusp(p));
            go(events, strands - 2, crossings, cusps, limits, out);
            events.pop();
            if crossings < limits.0 {
                events.push(FrontEvent::Crossing(p));
                go(events, strands, crossings + 1, cusps, limits, out);
                events.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, 0, 0, (max_crossings, max_cusps), &mut out);
    out
}

fn canonical_name(name: &str) -> &str {
    match name {
        "U" | "unknot" | "0_1" | "-U" => "U",
        "T2,3" | "T(2,3)" | "3_1" => "T2,3",
        "-T2,3" | "mT2,3" | "-T(2,3)" | "m3_1" | "-3_1" => "-T2,3",
        "fig8" | "4_1" | "-fig8" | "m4_1" | "-4_1" => "fig8",
        "T2,5" | "T(2,5)" | "5_1" => "T2,5",
        "-T2,5" | "mT2,5" | "-T(2,5)" | "m5_1" | "-5_1" => "-T2,5",
        other => other,
    }
}

/// Known maximal Thurston-Bennequin numbers.
pub fn exact_tb(name: &str) -> Option<i64> {
    match canonical_name(name) {
        "U" => Some(-1),
        "T2,3" => Some(1),
        "-T2,3" => Some(-6),
        "fig8" => Some(-3),
        "T2,5" => Some(3),
        "-T2,5" => Some(-10),
        _ => None,
    }
}

/// The knot `-K` as named in the table.
pub fn mirror_name(name: &str) -> String {
    match canonical_name(name) {
        "U" => "U".into(),
        "fig8" => "fig8".into(),
        n => match n.strip_prefix('-') {
            Some(rest) => rest.into(),
            None => format!("-{n}"),
        },
    }
}

const FRONTS: &[(&str, &str)] = &[
    ("U", "LCUSP 1 2; RCUSP 1 2"),
    ("T2,3", "LCUSP 1 2; LCUSP 3 4; X 2 3; X 2 3; X 2 3; RCUSP 1 2; RCUSP 1 2"),
    ("-T2,3", "LCUSP 1 2; LCUSP 1 2; X 2 3; X 2 3; X 1 2; X 1 2; RCUSP 2 3; RCUSP 1 2"),
    ("fig8", "LCUSP 1 2; LCUSP 1 2; X 2 3; X 2 3; X 1 2; X 1 2; X 1 2; RCUSP 2 3; RCUSP 1 2"),
    ("T2,5", "LCUSP 1 2; LCUSP 3 4; X 2 3; X 2 3; X 2 3; X 2 3; X 2 3; RCUSP 1 2; RCUSP 1 2"),
];

/// Stored fronts by knot name.
pub fn builtin_fronts() -> Vec<(&'static str, FrontDiagram)> {
    FRONTS.iter().map(|(n, text)| (*n, FrontDiagram::parse(text).expect("stored front"))).collect()
}

/// A front realizing a lower bound for the Thurston-Bennequin number.
#[derive(Clone, Debug)]
pub struct TbCertificate {
    pub knot: String,
    pub front: FrontDiagram,
    pub tb: i64,
    /// the table value when the maximum is known
    pub exact: Option<i64>,
}

/// Best stored front for `name`.
pub fn tb_lower_bound(name: &str) -> Result<TbCertificate> {
    let key = canonical_name(name);
    let best = builtin_fronts()
        .into_iter()
        .filter(|(n, _)| *n == key)
        .map(|(_, f)| {
            let tb = f.tb()?;
            Ok((f, tb))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max_by_key(|(_, tb)| *tb);
    match best {
        Some((front, tb)) => Ok(TbCertificate { knot: key.to_string(), front, tb, exact: exact_tb(key) }),
        None if knot_by_name(name).is_ok() => Err(Error::MissingTb(name.to_string())),
        None => Err(Error::UnknownKnot(name.to_string())),
    }
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub knot: String,
    pub tb: i64,
    pub tb_mirror: i64,
    /// both values come from the table of known maxima
    pub exact: bool,
    pub holds: bool,
}

/// `TB(K) + TB(-K) <= -1`, asserted when both values are exact.
pub fn check_tb_duality(name: &str) -> Result<DualityReport> {
    let mirror = mirror_name(name);
    let value = |n: &str| -> Result<(i64, bool)> {
        match exact_tb(n) {
            Some(v) => Ok((v, true)),
            None => Ok((tb_lower_bound(n)?.tb, false)),
        }
    };
    let (tb, e1) = value(name)?;
    let (tb_mirror, e2) = value(&mirror)?;
    let exact = e1 && e2;
    Ok(DualityReport {
        knot: canonical_name(name).to_string(),
        tb,
        tb_mirror,
        exact,
        holds: !exact || tb + tb_mirror <= -1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::jones_polynomial;

    #[test]
    fn unknot_front() {
        let f = FrontDiagram::parse("LCUSP 1 2\nRCUSP 1 2\n").unwrap();
        assert_eq!(f.tb().unwrap(), -1);
        assert!(f.resolve().unwrap().is_trivial());
    }

    #[test]
    fn stored_fronts_are_their_knots() {
        for (name, front) in builtin_fronts() {
            let d = front.resolve().unwrap();
            let target = knot_by_name(name).unwrap();
            assert_eq!(jones_polynomial(&d).unwrap(), jones_polynomial(&target).unwrap(), "{name}");
            assert_eq!(Some(front.tb().unwrap()), exact_tb(name), "{name}");
        }
    }

    #[test]
    fn rejects_bad_fronts() {
        assert!(FrontDiagram::parse("LCUSP 1 2").is_err());
        assert!(FrontDiagram::parse("LCUSP 1 3; RCUSP 1 3").is_err());
        assert!(FrontDiagram::parse("X 1 2").is_err());
        assert!(FrontDiagram::parse("LCUSP 1 2; LCUSP 3 4; RCUSP 1 2; RCUSP 1 2").is_err());
        assert!(FrontDiagram::parse("LCUSP 1 2; FOO 1 2").is_err());
        assert!(FrontDiagram::parse("").is_err());
    }

    #[test]
    fn text_round_trip() {
        for (_, f) in builtin_fronts() {
            assert_eq!(FrontDiagram::parse(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn small_unknot_fronts_respect_bound() {
        let fronts = enumerate_fronts(2, 3);
        assert!(fronts.len() > 50);
        for f in fronts {
            let d = f.resolve().unwrap();
            if jones_polynomial(&d).unwrap() == crate::diagram::LaurentPolynomial::one() {
                assert!(f.tb().unwrap() <= -1, "{f}");
            }
        }
    }

    #[test]
    fn certificates_and_duality() {
        assert_eq!(tb_lower_bound("unknot").unwrap().tb, -1);
        assert_eq!(tb_lower_bound("T2,3").unwrap().tb, 1);
        assert_eq!(tb_lower_bound("4_1").unwrap().tb, -3);
        assert!(matches!(tb_lower_bound("5_2"), Err(Error::MissingTb(_))));
        assert!(matches!(tb_lower_bound("nope"), Err(Error::UnknownKnot(_))));
        for k in ["U", "T2,3", "fig8", "T2,5"] {
            let r = check_tb_duality(k).unwrap();
            assert!(r.exact && r.holds, "{k}");
        }
        let r = check_tb_duality("T2,3").unwrap();
        assert_eq!((r.tb, r.tb_mirror), (1, -6));
    }
}
