//! Reference backend: the full cube of resolutions.
//!
//! Generators are enhanced states `(v, labels)` where `v` picks a smoothing
//! per crossing (bit clear: `(a,b),(c,d)`, bit set: `(a,d),(b,c)`) and
//! `labels` marks which loops carry `X`. With `lee` set the Frobenius
//! algebra is `X^2 = 1`, otherwise `X^2 = 0`.

use std::collections::{BTreeMap, HashMap};

use crate::arith::Field;
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::lee::filtration::{rank, FilteredComplex, SparseVec};

pub const CUBE_BUDGET: usize = 12;

struct StateLoops {
    /// loop index of every edge label
    loop_of: Vec<u32>,
    /// one edge label on every loop
    reps: Vec<u32>,
}

fn smoothing(tuples: &[[u32; 4]], state: u64) -> StateLoops {
    if tuples.is_empty() {
        // the crossingless diagram is a single circle
        return StateLoops { loop_of: vec![0], reps: vec![0] };
    }
    let n_edges = 2 * tuples.len();
    let mut adj = vec![[0u32; 2]; n_edges + 1];
    let mut fill = vec![0usize; n_edges + 1];
    let mut link = |x: u32, y: u32| {
        adj[x as usize][fill[x as usize]] = y;
        fill[x as usize] += 1;
        adj[y as usize][fill[y as usize]] = x;
        fill[y as usize] += 1;
    };
    for (i, &[a, b, c, d]) in tuples.iter().enumerate() {
        if state >> i & 1 == 0 {
            link(a, b);
            link(c, d);
        } else {
            link(a, d);
            link(b, c);
        }
    }
    let mut loop_of = vec![u32::MAX; n_edges + 1];
    let mut reps = Vec::new();
    for start in 1..=n_edges as u32 {
        if loop_of[start as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            if loop_of[e as usize] != u32::MAX {
                continue;
            }
            loop_of[e as usize] = id;
            stack.extend(adj[e as usize]);
        }
    }
    StateLoops { loop_of, reps }
}

pub struct Cube<'a> {
    diagram: &'a PlanarDiagram,
    tuples: Vec<[u32; 4]>,
    lee: bool,
    states: HashMap<u64, StateLoops>,
}

impl<'a> Cube<'a> {
    pub fn new(diagram: &'a PlanarDiagram, lee: bool, budget: usize) -> Result<Self> {
        let n = diagram.crossing_count();
        if n > budget {
            return Err(Error::BudgetExceeded { crossings: n, budget });
        }
        Ok(Cube { diagram, tuples: diagram.tuples(), lee, states: HashMap::new() })
    }

    fn n(&self) -> usize {
        self.tuples.len()
    }

    fn loops(&mut self, state: u64) -> &StateLoops {
        let tuples = &self.tuples;
        self.states.entry(state).or_insert_with(|| smoothing(tuples, state))
    }

    /// States in homological degree `h`.
    fn states_in(&self, h: i64) -> Vec<u64> {
        let k = h + self.diagram.negative_count() as i64;
        if k < 0 || k > self.n() as i64 {
            return Vec::new();
        }
        (0..1u64 << self.n()).filter(|s| s.count_ones() as i64 == k).collect()
    }

    /// Generators of degree `h` with their q-grading, plus an index map.
    fn generators(&mut self, h: i64) -> (Vec<(u64, u64)>, Vec<i64>, HashMap<(u64, u64), usize>) {
        let shift = h + self.diagram.negative_count() as i64 + self.diagram.positive_count() as i64
            - 2 * self.diagram.negative_count() as i64;
        let mut gens = Vec::new();
        let mut qs = Vec::new();
        let mut index = HashMap::new();
        for s in self.states_in(h) {
            let loops = self.loops(s).reps.len() as u32;
            for mask in 0..1u64 << loops {
                index.insert((s, mask), gens.len());
                gens.push((s, mask));
                qs.push(loops as i64 - 2 * mask.count_ones() as i64 + shift);
            }
        }
        (gens, qs, index)
    }

    /// Differential of one generator as `(state, labels, coefficient)`.
    fn differential(&mut self, state: u64, mask: u64) -> Vec<(u64, u64, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            if state >> i & 1 == 1 {
                continue;
            }
            let sign = if (state & ((1u64 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let target = state | 1 << i;
            let [a, b, c, _] = self.tuples[i];
            self.loops(target);
            let src = &self.states[&state];
            let dst = &self.states[&target];
            let (la, lc) = (src.loop_of[a as usize], src.loop_of[c as usize]);
            // carry the untouched loops across
            let mut base = 0u64;
            for (k, &rep) in src.reps.iter().enumerate() {
                if k as u32 != la && k as u32 != lc && mask >> k & 1 == 1 {
                    base |= 1 << dst.loop_of[rep as usize];
                }
            }
            let bit = |l: u32| (mask >> l & 1) as u8;
            if la != lc {
                let merged = 1u64 << dst.loop_of[a as usize];
                match (bit(la), bit(lc)) {
                    (0, 0) => out.push((target, base, sign)),
                    (1, 1) => {
                        if self.lee {
                            out.push((target, base, sign));
                        }
                    }
                    _ => out.push((target, base | merged, sign)),
                }
            } else {
                let p = 1u64 << dst.loop_of[a as usize];
                let q = 1u64 << dst.loop_of[b as usize];
                if bit(la) == 0 {
                    out.push((target, base | q, sign));
                    out.push((target, base | p, sign));
                } else {
                    out.push((target, base | p | q, sign));
                    if self.lee {
                        out.push((target, base, sign));
                    }
                }
            }
        }
        out
    }

    fn matrix<F: Field>(
        &mut self,
        unit: &F,
        sources: &[(u64, u64)],
        targets: &HashMap<(u64, u64), usize>,
    ) -> Vec<SparseVec<F>> {
        sources
            .iter()
            .map(|&(s, m)| {
                let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                for (t, tm, c) in self.differential(s, m) {
                    *col.entry(targets[&(t, tm)]).or_insert(0) += c;
                }
                col.into_iter()
                    .filter(|&(_, c)| c != 0)
                    .map(|(i, c)| (i, unit.from_i64(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect()
    }

    /// Lee complex in degrees -1, 0, 1.
    pub fn lee_complex<F: Field>(&mut self, unit: &F) -> FilteredComplex<F> {
        assert!(self.lee);
        let (gm, qm, _) = self.generators(-1);
        let (g0, q0, i0) = self.generators(0);
        let (_, q1, i1) = self.generators(1);
        let d_minus = self.matrix(unit, &gm, &i0);
        let d_zero = self.matrix(unit, &g0, &i1);
        FilteredComplex { q_minus: qm, q_zero: q0, q_plus: q1, d_minus, d_zero }
    }

    /// Dimensions of `Kh^{h,q}`; requires the `X^2 = 0` algebra.
    pub fn homology<F: Field>(&mut self, unit: &F) -> BTreeMap<(i64, i64), usize> {
        assert!(!self.lee);
        let lo = -(self.diagram.negative_count() as i64);
        let hi = self.diagram.positive_count() as i64;
        let mut ranks: HashMap<(i64, i64), usize> = HashMap::new();
        let mut dims: HashMap<(i64, i64), usize> = HashMap::new();
        for h in lo..=hi {
            let (g, q, _) = self.generators(h);
            let (_, _, inext) = self.generators(h + 1);
            for &x in &q {
                *dims.entry((h, x)).or_insert(0) += 1;
            }
            let cols = self.matrix(unit, &g, &inext);
            let mut by_q: BTreeMap<i64, Vec<SparseVec<F>>> = BTreeMap::new();
            for (col, &x) in cols.into_iter().zip(&q) {
                by_q.entry(x).or_default().push(col);
            }
            for (x, cols) in by_q {
                ranks.insert((h, x), rank(cols));
            }
        }
        let mut out = BTreeMap::new();
        for (&(h, q), &dim) in &dims {
            let r_out = ranks.get(&(h, q)).copied().unwrap_or(0);
            let r_in = ranks.get(&(h - 1, q)).copied().unwrap_or(0);
            let d = dim - r_out - r_in;
            if d > 0 {
                out.insert((h, q), d);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::diagram::library::knot_by_name;

    #[test]
    fn trefoil_khovanov() {
        let d = knot_by_name("T2,3").unwrap();
        let kh = Cube::new(&d, false, CUBE_BUDGET).unwrap().homology(&Rational::from_int(1));
        let want: BTreeMap<(i64, i64), usize> =
            [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)].into_iter().collect();
        assert_eq!(kh, want);
    }

    #[test]
    fn trefoil_lee_levels() {
        let d = knot_by_name("T2,3").unwrap();
        let c = Cube::new(&d, true, CUBE_BUDGET).unwrap().lee_complex(&Rational::from_int(1));
        let l = c.levels().unwrap();
        assert_eq!((l.q_min, l.q_max), (1, 3));
        let m = d.mirror();
        let c = Cube::new(&m, true, CUBE_BUDGET).unwrap().lee_complex(&Rational::from_int(1));
        assert_eq!(c.levels().unwrap().s(), -2);
    }
}
