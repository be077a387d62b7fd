//! Named knots.
//!
//! Names accepted by [`knot_by_name`]:
//! `U`, `unknot`, `0_1`; `T2,3` / `T(2,3)` torus knots (positive); table
//! names `3_1` .. `7_2` where a braid word is known; `fig8`; a leading `-`
//! for the concordance inverse, a leading `m` on table names for the
//! mirror; `A#B` for connected sums; `braid(n;w1,w2,..)` for braid closures.

use crate::diagram::builder::braid_closure;
use crate::diagram::pd::PlanarDiagram;
use crate::error::{Error, Result};

/// Table knots as braid words: (name, strands, word).
pub const BRAID_TABLE: &[(&str, usize, &[i32])] = &[
    ("3_1", 2, &[1, 1, 1]),
    ("4_1", 3, &[1, -2, 1, -2]),
    ("5_1", 2, &[1, 1, 1, 1, 1]),
    ("5_2", 3, &[1, 1, 1, 2, -1, 2]),
    ("6_1", 4, &[1, 1, 2, -1, -3, 2, -3]),
    ("6_2", 3, &[1, 1, 1, -2, 1, -2]),
    ("6_3", 3, &[1, 1, -2, 1, -2, -2]),
    ("7_1", 2, &[1, 1, 1, 1, 1, 1, 1]),
    ("7_2", 4, &[1, 1, 1, 2, -1, 2, 3, -2, 3]),
];

pub fn torus_knot(p: usize, q: usize) -> Result<PlanarDiagram> {
    if p < 2 || q < 2 {
        return Ok(PlanarDiagram::unknot());
    }
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    let mut word = Vec::with_capacity((p - 1) * q);
    for _ in 0..q {
        word.extend(1..p as i32);
    }
    Ok(braid_closure(p, &word)?.with_name(format!("T{p},{q}")))
}

pub fn trefoil() -> PlanarDiagram {
    torus_knot(2, 3).expect("trefoil")
}

pub fn figure_eight() -> PlanarDiagram {
    braid_closure(3, &[1, -2, 1, -2]).expect("figure eight").with_name("fig8")
}

fn parse_torus(s: &str) -> Option<(usize, usize)> {
    let body = s.strip_prefix('T')?;
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
    let (a, b) = body.split_once([',', '_'])?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn parse_braid(s: &str) -> Option<Result<PlanarDiagram>> {
    let body = s.strip_prefix("braid(")?.strip_suffix(')')?;
    let (n, word) = body.split_once(';')?;
    let n: usize = n.trim().parse().ok()?;
    let word: Option<Vec<i32>> = if word.trim().is_empty() {
        Some(Vec::new())
    } else {
        word.split(',').map(|w| w.trim().parse().ok()).collect()
    };
    Some(braid_closure(n, &word?))
}

pub fn knot_by_name(name: &str) -> Result<PlanarDiagram> {
    let name = name.trim();
    if name.contains('#') {
        let mut acc = PlanarDiagram::unknot();
        for part in name.split('#') {
            acc = acc.connected_sum(&knot_by_name(part)?);
        }
        return Ok(acc.with_name(name));
    }
    if let Some(rest) = name.strip_prefix('-') {
        return Ok(knot_by_name(rest)?.concordance_inverse().with_name(name));
    }
    let d = match name {
        "U" | "unknot" | "0_1" => PlanarDiagram::unknot(),
        "fig8" | "figure-8" | "figure8" => figure_eight(),
        _ => {
            if let Some(r) = parse_braid(name) {
                r?
            } else if let Some((p, q)) = parse_torus(name) {
                torus_knot(p, q)?
            } else if let Some(&(_, n, w)) = BRAID_TABLE.iter().find(|e| e.0 == name) {
                braid_closure(n, w)?
            } else if let Some(&(_, n, w)) =
                name.strip_prefix('m').and_then(|t| BRAID_TABLE.iter().find(|e| e.0 == t))
            {
                braid_closure(n, w)?.mirror()
            } else {
                return Err(Error::UnknownKnot(name.to_string()));
            }
        }
    };
    Ok(d.with_name(name))
}
