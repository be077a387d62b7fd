//! Jones polynomial by Kauffman bracket state sum.
//!
//! The result is stored in the variable `x = t^-1`, so the right-handed
//! trefoil reads `-x^-4 + x^-3 + x^-1`.

use rayon::prelude::*;

use crate::diagram::pd::PlanarDiagram;
use crate::diagram::poly::LaurentPolynomial;
use crate::error::{Error, Result};

pub const JONES_BUDGET: usize = 24;

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Returns true if the two were in different sets.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// Number of loops in the smoothing selected by `state` (bit i set means
/// crossing i takes the `(a,d),(b,c)` resolution).
pub fn loop_count(tuples: &[[u32; 4]], state: u64) -> usize {
    let n_edges = 2 * tuples.len();
    let mut dsu = Dsu::new(n_edges + 1);
    let mut merges = 0;
    for (i, &[a, b, c, d]) in tuples.iter().enumerate() {
        let (p, q) = if state >> i & 1 == 0 { ((a, b), (c, d)) } else { ((a, d), (b, c)) };
        merges += dsu.union(p.0, p.1) as usize;
        merges += dsu.union(q.0, q.1) as usize;
    }
    n_edges - merges
}

pub fn jones_polynomial(d: &PlanarDiagram) -> Result<LaurentPolynomial> {
    jones_with_budget(d, JONES_BUDGET)
}

pub fn jones_with_budget(d: &PlanarDiagram, budget: usize) -> Result<LaurentPolynomial> {
    let n = d.crossing_count();
    if n > budget {
        return Err(Error::BudgetExceeded { crossings: n, budget });
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let tuples = d.tuples();
    // counts[k][l]: states with k B-smoothings and l loops
    let max_loops = n + 1;
    let total: u64 = 1 << n;
    let chunk = 1u64 << n.saturating_sub(6).min(14);
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|block| {
            let mut local = vec![vec![0u64; max_loops + 1]; n + 1];
            let end = ((block + 1) * chunk).min(total);
            for state in block * chunk..end {
                let l = loop_count(&tuples, state);
                local[state.count_ones() as usize][l] += 1;
            }
            local
        })
        .reduce(
            || vec![vec![0u64; max_loops + 1]; n + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    // <D> = sum A^(#A - #B) (-A^2 - A^-2)^(loops - 1), in powers of A
    let delta = LaurentPolynomial::from_terms([(2, -1), (-2, -1)]);
    let mut bracket = LaurentPolynomial::zero();
    for (k, row) in counts.iter().enumerate() {
        for (l, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let a_exp = n as i64 - 2 * k as i64;
            let term = &delta.pow(l as u32 - 1) * &LaurentPolynomial::monomial(count as i64, a_exp);
            bracket = &bracket + &term;
        }
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = &bracket * &LaurentPolynomial::monomial(sign, -3 * w);
    normalized
        .divide_exponents(4)
        .ok_or_else(|| Error::Internal("bracket exponents not divisible by 4".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builder::braid_closure;

    #[test]
    fn trefoil() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        let v = jones_polynomial(&d).unwrap();
        assert_eq!(v, LaurentPolynomial::from_terms([(-4, -1), (-3, 1), (-1, 1)]));
        let m = jones_polynomial(&d.mirror()).unwrap();
        assert_eq!(m, v.substitute_power(-1));
    }

    #[test]
    fn kinks_are_trivial() {
        let d = PlanarDiagram::parse("X(1,2,2,1)").unwrap();
        assert_eq!(jones_polynomial(&d).unwrap(), LaurentPolynomial::one());
        let d = PlanarDiagram::parse("X(2,1,1,2)").unwrap();
        assert_eq!(jones_polynomial(&d).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let d = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        let v = jones_polynomial(&d).unwrap();
        assert_eq!(
            v,
            LaurentPolynomial::from_terms([(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)])
        );
    }

    #[test]
    fn budget() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert!(matches!(jones_with_budget(&d, 2), Err(Error::BudgetExceeded { .. })));
    }
}
