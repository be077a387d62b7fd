//! Seifert matrices and band presentations of Seifert surfaces.

mod bands;
mod render;

pub use bands::{band_trade_sequence, Band, BandPresentation};
pub use render::{boundary_crossing_count, boundary_diagram};

use std::fmt;

use crate::arith::Rational;
use crate::diagram::poly::determinant;
use crate::diagram::LaurentPolynomial;
use crate::error::{Error, Result};

/// Square integer matrix `A` with `det(A - A^T) = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    let polys: Vec<Vec<LaurentPolynomial>> =
        m.iter().map(|row| row.iter().map(|&x| LaurentPolynomial::monomial(x, 0)).collect()).collect();
    determinant(&polys).coef(0)
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotSeifert("matrix is not square".into()));
        }
        if n % 2 != 0 {
            return Err(Error::NotSeifert(format!("odd size {n}")));
        }
        let skew: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| entries[i][j] - entries[j][i]).collect()).collect();
        let det = if n == 0 { 1 } else { int_det(&skew) };
        if det.abs() != 1 {
            return Err(Error::NotSeifert(format!("det(A - A^T) = {det}")));
        }
        Ok(SeifertMatrix { entries })
    }

    /// `[[-1, 1], [0, -1]]`, bounded by the positive trefoil.
    pub fn trefoil() -> Self {
        SeifertMatrix { entries: vec![vec![-1, 1], vec![0, -1]] }
    }

    /// `[[1, 1], [0, -1]]`
    pub fn figure_eight() -> Self {
        SeifertMatrix { entries: vec![vec![1, 1], vec![0, -1]] }
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        SeifertMatrix { entries: (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect() }
    }

    pub fn negated(&self) -> Self {
        SeifertMatrix { entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// Signature of `A + A^T`.
    pub fn signature(&self) -> i64 {
        let n = self.size();
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_int(self.entries[i][j] + self.entries[j][i])).collect())
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut sig = 0;
        while !active.is_empty() {
            let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
            let Some(p) = pivot else {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row and column i += row and column j
                for k in 0..n {
                    let v = &m[i][k] + &m[j][k];
                    m[i][k] = v;
                }
                for k in 0..n {
                    let v = &m[k][i] + &m[k][j];
                    m[k][i] = v;
                }
                continue;
            };
            sig += m[p][p].signum() as i64;
            active.retain(|&i| i != p);
            let inv = m[p][p].recip();
            for &j in &active {
                let f = &m[j][p] * &inv;
                for &l in &active {
                    let v = &m[j][l] - &(&f * &m[p][l]);
                    m[j][l] = v;
                }
            }
        }
        sig
    }

    /// `det(A - t A^T)`, made symmetric under `t -> 1/t` with value 1 at `t = 1`.
    pub fn alexander(&self) -> LaurentPolynomial {
        let n = self.size();
        if n == 0 {
            return LaurentPolynomial::one();
        }
        let m: Vec<Vec<LaurentPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| LaurentPolynomial::from_terms([(0, self.entries[i][j]), (1, -self.entries[j][i])]))
                    .collect()
            })
            .collect();
        determinant(&m).normalize_symmetric()
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
