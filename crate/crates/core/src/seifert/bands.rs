use std::fmt::Write as _;

use crate::diagram::{canonical_hash, knot_by_name, PlanarDiagram};
use crate::error::{Error, Result};
use crate::seifert::SeifertMatrix;

/// One band of the surface: its framing and the knot tied into it.
#[derive(Clone, Debug)]
pub struct Band {
    pub framing: i64,
    pub knot: PlanarDiagram,
}

impl Band {
    pub fn unknotted(framing: i64) -> Self {
        Band { framing, knot: PlanarDiagram::unknot() }
    }

    fn knot_key(&self) -> String {
        canonical_hash(&self.knot)
    }

    fn knot_label(&self) -> String {
        if self.knot.is_trivial() {
            return "U".into();
        }
        match self.knot.name() {
            Some(n) if knot_by_name(n).map(|d| canonical_hash(&d) == self.knot_key()).unwrap_or(false) => n.into(),
            _ => format!("pd:{}", self.knot.to_pd_string().replace([' ', '\n'], "")),
        }
    }
}

impl PartialEq for Band {
    fn eq(&self, other: &Self) -> bool {
        self.framing == other.framing && self.knot_key() == other.knot_key()
    }
}

/// A disk with `2g` bands attached in the order `b1 b2 b1 b2 b3 b4 b3 b4 ...`.
/// Consecutive bands `b(2k+1), b(2k+2)` interleave; `clasps[i][j]` counts
/// extra clasps between bands `i` and `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandPresentation {
    bands: Vec<Band>,
    clasps: Vec<Vec<i64>>,
}

impl BandPresentation {
    pub fn new(bands: Vec<Band>) -> Result<Self> {
        if bands.len() % 2 != 0 {
            return Err(Error::BandFormat(format!("{} bands; need an even number", bands.len())));
        }
        let n = bands.len();
        Ok(BandPresentation { bands, clasps: vec![vec![0; n]; n] })
    }

    pub fn disk() -> Self {
        BandPresentation { bands: vec![], clasps: vec![] }
    }

    pub fn genus(&self) -> usize {
        self.bands.len() / 2
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn band(&self, i: usize) -> Result<&Band> {
        self.bands.get(i).ok_or(Error::BandIndex { index: i, count: self.bands.len() })
    }

    pub fn clasp_count(&self, i: usize, j: usize) -> i64 {
        self.clasps[i][j]
    }

    pub fn set_clasps(&mut self, i: usize, j: usize, count: i64) -> Result<()> {
        let n = self.bands.len();
        for k in [i, j] {
            if k >= n {
                return Err(Error::BandIndex { index: k, count: n });
            }
        }
        if i == j {
            return Err(Error::BandFormat(format!("band {} cannot clasp itself", i + 1)));
        }
        self.clasps[i][j] = count;
        self.clasps[j][i] = count;
        Ok(())
    }

    /// Feet of the bands along the disk boundary, left to right.
    pub fn attaching_order(&self) -> Vec<usize> {
        (0..self.genus()).flat_map(|k| [2 * k, 2 * k + 1, 2 * k, 2 * k + 1]).collect()
    }

    /// `A[i][i]` is the framing of band `i`; each interleaved pair adds
    /// `A[2k][2k+1] = 1`; clasps add to both `A[i][j]` and `A[j][i]`.
    pub fn seifert_matrix(&self) -> SeifertMatrix {
        let n = self.bands.len();
        let mut a = self.clasps.clone();
        for (i, band) in self.bands.iter().enumerate() {
            a[i][i] = band.framing;
        }
        for k in 0..n / 2 {
            a[2 * k][2 * k + 1] += 1;
        }
        SeifertMatrix::new(a).expect("band presentations have unimodular A - A^T")
    }

    /// Unknotted bands with Seifert matrix exactly `a`. The skew part of `a`
    /// must be the standard one, `A[2k][2k+1] - A[2k+1][2k] = 1` and zero
    /// elsewhere.
    pub fn realize(a: &SeifertMatrix) -> Result<Self> {
        let n = a.size();
        let e = a.entries();
        for i in 0..n {
            for j in 0..n {
                let expected = match (i % 2, j) {
                    (0, j) if j == i + 1 => 1,
                    (1, j) if j + 1 == i => -1,
                    _ => 0,
                };
                if e[i][j] - e[j][i] != expected {
                    return Err(Error::NotSeifert(format!(
                        "A - A^T is not in standard symplectic form at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut bp = Self::new((0..n).map(|i| Band::unknotted(e[i][i])).collect())?;
        for i in 0..n {
            for j in i + 1..n {
                let base = if i % 2 == 0 && j == i + 1 { 1 } else { 0 };
                bp.clasps[i][j] = e[i][j] - base;
                bp.clasps[j][i] = e[i][j] - base;
            }
        }
        debug_assert_eq!(&bp.seifert_matrix(), a);
        Ok(bp)
    }

    /// Tie a trefoil of the given handedness into band `i`. The framing, and
    /// with it the Seifert matrix, is unchanged.
    pub fn insert_trefoil(&self, i: usize, handedness: i8) -> Result<Self> {
        let band = self.band(i)?;
        let name = if handedness >= 0 { "T2,3" } else { "-T2,3" };
        let trefoil = knot_by_name(name)?;
        let knot = if band.knot.is_trivial() {
            trefoil
        } else {
            let joined = band.knot.connected_sum(&trefoil);
            let label = format!("{}#{}", band.knot.name().unwrap_or("K"), name);
            joined.with_name(label)
        };
        self.band_modify(i, Band { framing: band.framing, knot })
    }

    /// Cut band `i` and reattach it in the same place as `band`.
    pub fn band_modify(&self, i: usize, band: Band) -> Result<Self> {
        self.band(i)?;
        let mut out = self.clone();
        out.bands[i] = band;
        Ok(out)
    }

    /// Band lines `B<i> framing=<f> knot=<k>` then clasp lines `C <i> <j> <n>`,
    /// all 1-based. Knots are library names or `pd:` followed by a PD code.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, &|s| resolve_knot(s))
    }

    pub fn parse_with(text: &str, resolve: &dyn Fn(&str) -> Result<PlanarDiagram>) -> Result<Self> {
        let mut bands: Vec<(usize, Band)> = Vec::new();
        let mut clasp_lines = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::BandFormat(format!("line {}: {msg}: `{line}`", lineno + 1));
            let mut words = line.split_whitespace();
            let head = words.next().unwrap();
            if let Some(idx) = head.strip_prefix('B') {
                let idx: usize = idx.parse().map_err(|_| bad("bad band index"))?;
                let (mut framing, mut knot) = (None, PlanarDiagram::unknot());
                for w in words {
                    match w.split_once('=') {
                        Some(("framing", v)) => framing = Some(v.parse::<i64>().map_err(|_| bad("bad framing"))?),
                        Some(("knot", v)) => knot = resolve(v)?,
                        _ => return Err(bad("unknown field")),
                    }
                }
                let framing = framing.ok_or_else(|| bad("missing framing"))?;
                bands.push((idx, Band { framing, knot }));
            } else if head == "C" {
                let nums: Vec<i64> = words.map(|w| w.parse::<i64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad("bad number"))?;
                if nums.len() != 3 || nums[0] < 1 || nums[1] < 1 {
                    return Err(bad("expected `C <i> <j> <count>`"));
                }
                clasp_lines.push((nums[0] as usize - 1, nums[1] as usize - 1, nums[2]));
            } else {
                return Err(bad("expected a B or C line"));
            }
        }
        bands.sort_by_key(|b| b.0);
        if bands.iter().enumerate().any(|(k, b)| b.0 != k + 1) {
            return Err(Error::BandFormat("bands must be numbered 1..2g without gaps".into()));
        }
        let mut bp = Self::new(bands.into_iter().map(|b| b.1).collect())?;
        for (i, j, c) in clasp_lines {
            bp.set_clasps(i, j, c)?;
        }
        Ok(bp)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, band) in self.bands.iter().enumerate() {
            let _ = writeln!(out, "B{} framing={} knot={}", i + 1, band.framing, band.knot_label());
        }
        let n = self.bands.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.clasps[i][j] != 0 {
                    let _ = writeln!(out, "C {} {} {}", i + 1, j + 1, self.clasps[i][j]);
                }
            }
        }
        out
    }
}

/// Library name, or `pd:` followed by an inline PD code.
pub fn resolve_knot(s: &str) -> Result<PlanarDiagram> {
    match s.strip_prefix("pd:") {
        Some(code) => PlanarDiagram::parse(&code.replace(")X", ") X")),
        None => knot_by_name(s),
    }
}

/// Replace the bands of `source` by those of `target` one at a time. The
/// two presentations must have the same Seifert matrix, which then holds
/// along the whole sequence.
pub fn band_trade_sequence(source: &BandPresentation, target: &BandPresentation) -> Result<Vec<BandPresentation>> {
    if source.seifert_matrix() != target.seifert_matrix() || source.clasps != target.clasps {
        return Err(Error::MatrixMismatch);
    }
    if source == target {
        return Ok(vec![source.clone()]);
    }
    let mut seq = vec![source.clone()];
    for i in 0..source.bands.len() {
        let next = seq.last().unwrap().band_modify(i, target.bands[i].clone())?;
        seq.push(next);
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8_bp() -> BandPresentation {
        BandPresentation::realize(&SeifertMatrix::figure_eight()).unwrap()
    }

    #[test]
    fn matrix_from_bands() {
        let bp = BandPresentation::new(vec![Band::unknotted(-1), Band::unknotted(-1)]).unwrap();
        assert_eq!(bp.seifert_matrix(), SeifertMatrix::trefoil());
        let mut bp = BandPresentation::new(vec![Band::unknotted(1), Band::unknotted(-1)]).unwrap();
        assert_eq!(bp.seifert_matrix(), SeifertMatrix::figure_eight());
        bp.set_clasps(0, 1, 2).unwrap();
        assert_eq!(bp.seifert_matrix().entries(), &[vec![1, 3], vec![2, -1]]);
        assert_eq!(BandPresentation::disk().seifert_matrix().size(), 0);
        assert_eq!(bp.attaching_order(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn realize_round_trip() {
        for a in [
            SeifertMatrix::trefoil(),
            SeifertMatrix::figure_eight(),
            SeifertMatrix::new(vec![
                vec![1, 2, 0, 1],
                vec![1, 0, 0, 0],
                vec![0, 0, -1, 1],
                vec![1, 0, 0, 3],
            ])
            .unwrap(),
        ] {
            assert_eq!(BandPresentation::realize(&a).unwrap().seifert_matrix(), a);
        }
        assert!(BandPresentation::realize(&SeifertMatrix::new(vec![vec![0, 0], vec![1, 0]]).unwrap()).is_err());
    }

    #[test]
    fn trefoil_insertion_keeps_matrix() {
        let bp = fig8_bp();
        let up = bp.insert_trefoil(0, 1).unwrap().insert_trefoil(0, -1).unwrap();
        assert_eq!(up.seifert_matrix(), bp.seifert_matrix());
        assert_eq!(up.band(0).unwrap().knot.crossing_count(), 6);
        assert!(bp.insert_trefoil(2, 1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut bp = fig8_bp().insert_trefoil(1, -1).unwrap();
        bp.set_clasps(0, 1, -1).unwrap();
        let text = bp.to_text();
        assert!(text.contains("B2 framing=-1 knot=-T2,3"), "{text}");
        assert_eq!(BandPresentation::parse(&text).unwrap(), bp);
        let pd = "B1 framing=0 knot=pd:X(1,5,2,4)X(3,1,4,6)X(5,3,6,2)\nB2 framing=1 knot=U\n";
        let parsed = BandPresentation::parse(pd).unwrap();
        assert_eq!(parsed.band(0).unwrap().knot.crossing_count(), 3);
        assert!(BandPresentation::parse("B1 framing=0\n").is_err());
        assert!(BandPresentation::parse("B1 framing=0\nB3 framing=0\n").is_err());
        assert!(BandPresentation::parse("Q 1 2\n").is_err());
    }

    #[test]
    fn trade_sequences() {
        let src = fig8_bp();
        assert_eq!(band_trade_sequence(&src, &src).unwrap().len(), 1);
        let dst = src.insert_trefoil(0, 1).unwrap().insert_trefoil(1, -1).unwrap();
        let seq = band_trade_sequence(&src, &dst).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[2], dst);
        assert!(seq.iter().all(|bp| bp.seifert_matrix() == src.seifert_matrix()));
        let other = BandPresentation::realize(&SeifertMatrix::trefoil()).unwrap();
        assert_eq!(band_trade_sequence(&src, &other), Err(Error::MatrixMismatch));
    }
}
