//! The s-invariant of a filtered chain complex concentrated around
//! homological degree 0.
//!
//! Generators carry a q-grading and the differential never lowers it, so
//! `F^p = span{q >= p}` is a subcomplex. The induced filtration on `H^0`
//! drops from rank 2 to 1 at `q_min` and from 1 to 0 at `q_max`.

use std::collections::HashMap;

use crate::arith::Field;
use crate::error::{Error, Result};

/// Sparse vector, sorted by index, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// `x + c * y`.
pub fn axpy<F: Field>(x: &SparseVec<F>, c: &F, y: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c.mul(&y[j].1)));
            j += 1;
        } else {
            let v = x[i].1.add(&c.mul(&y[j].1));
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form; each stored vector has a distinct pivot.
struct Echelon<F: Field> {
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Echelon { pivots: HashMap::new() }
    }

    /// Reduce `v` and store it if independent. `pivot_of` picks the pivot
    /// entry of a nonzero vector. Returns the new pivot, if any.
    fn insert(&mut self, mut v: SparseVec<F>, pivot_of: &dyn Fn(&SparseVec<F>) -> usize) -> Option<usize> {
        while !v.is_empty() {
            let p = pivot_of(&v);
            match self.pivots.get(&p) {
                Some(w) => {
                    let vp = &v.iter().find(|e| e.0 == p).unwrap().1;
                    let wp = &w.iter().find(|e| e.0 == p).unwrap().1;
                    let c = vp.mul(&wp.inv()).neg();
                    v = axpy(&v, &c, w);
                }
                None => {
                    self.pivots.insert(p, v);
                    return Some(p);
                }
            }
        }
        None
    }
}

/// Rank of the span of `columns`.
pub fn rank<F: Field>(columns: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut ech = Echelon::<F>::new();
    let first = |v: &SparseVec<F>| v[0].0;
    columns.into_iter().filter_map(|c| ech.insert(c, &first)).count()
}

/// Complex in degrees -1, 0, 1 with q-gradings.
#[derive(Clone, Debug)]
pub struct FilteredComplex<F: Field> {
    pub q_minus: Vec<i64>,
    pub q_zero: Vec<i64>,
    pub q_plus: Vec<i64>,
    /// Images of degree -1 generators, indexed into degree 0.
    pub d_minus: Vec<SparseVec<F>>,
    /// Images of degree 0 generators, indexed into degree 1.
    pub d_zero: Vec<SparseVec<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationLevels {
    pub q_min: i64,
    pub q_max: i64,
}

impl FiltrationLevels {
    pub fn s(&self) -> i64 {
        (self.q_min + self.q_max) / 2
    }
}

impl<F: Field> FilteredComplex<F> {
    /// Dimension of `F^p H^0` at each distinct degree-0 q level, highest first.
    pub fn ranks(&self) -> Vec<(i64, usize)> {
        let mut levels: Vec<i64> = self.q_zero.clone();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.dedup();

        // cycles: kernel of d_zero restricted to F^p
        let mut order: Vec<usize> = (0..self.q_zero.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.q_zero[i]));
        let mut ech = Echelon::<F>::new();
        let lowest_index = |v: &SparseVec<F>| v[0].0;
        let mut cycles = Vec::with_capacity(levels.len());
        let mut k = 0;
        let mut rank = 0;
        for &p in &levels {
            while k < order.len() && self.q_zero[order[k]] >= p {
                if ech.insert(self.d_zero[order[k]].clone(), &lowest_index).is_some() {
                    rank += 1;
                }
                k += 1;
            }
            cycles.push(k - rank);
        }

        // boundaries: reduce with pivot at the lowest-q entry
        let q0 = &self.q_zero;
        let lowest_q = |v: &SparseVec<F>| {
            v.iter().map(|e| e.0).min_by_key(|&i| (q0[i], i)).unwrap()
        };
        let mut bech = Echelon::<F>::new();
        let mut pivot_q = Vec::new();
        for col in &self.d_minus {
            if let Some(p) = bech.insert(col.clone(), &lowest_q) {
                pivot_q.push(q0[p]);
            }
        }
        levels
            .iter()
            .zip(cycles)
            .map(|(&p, z)| {
                let b = pivot_q.iter().filter(|&&q| q >= p).count();
                (p, z - b)
            })
            .collect()
    }

    pub fn levels(&self) -> Result<FiltrationLevels> {
        let ranks = self.ranks();
        let total = ranks.last().map(|r| r.1).unwrap_or(0);
        if total != 2 {
            return Err(Error::Internal(format!("degree-0 homology has dimension {total}, expected 2")));
        }
        let q_max = ranks.iter().find(|r| r.1 >= 1).unwrap().0;
        let q_min = ranks.iter().find(|r| r.1 >= 2).unwrap().0;
        if q_max - q_min != 2 {
            return Err(Error::Internal(format!(
                "filtration levels {q_min} and {q_max} are not 2 apart"
            )));
        }
        Ok(FiltrationLevels { q_min, q_max })
    }
}
