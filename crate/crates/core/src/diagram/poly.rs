use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial with integer coefficients, sparse in the exponent.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coef: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coef, exp);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (exp, coef) in terms {
            p.add_term(coef, exp);
        }
        p
    }

    pub fn add_term(&mut self, coef: i64, exp: i64) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitute x -> x^k (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    pub fn shift(&self, by: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + by, c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divide every exponent by `k`; `None` if some exponent is not divisible.
    pub fn divide_exponents(&self, k: i64) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(Self::from_terms(self.terms().map(|(e, c)| (e / k, c))))
    }

    /// Multiply by the unit ±x^k that makes the polynomial symmetric under
    /// x -> 1/x with value +1 at x = 1 (positive coefficient sum). Only
    /// meaningful for polynomials symmetric up to units (Alexander).
    pub fn normalize_symmetric(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Self::zero();
        };
        let span = hi - lo;
        if span % 2 != 0 {
            return self.clone();
        }
        let p = self.shift(-(lo + span / 2));
        if p.terms().map(|(_, c)| c).sum::<i64>() < 0 {
            -&p
        } else {
            p
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coef(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_exp() {
            if hi - dhi < rem.min_exp()? - dlo {
                return None;
            }
            let c = rem.coef(hi);
            if c % lead != 0 {
                return None;
            }
            let term = Self::monomial(c / lead, hi - dhi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    pub fn eval_i64(&self, x: i64) -> Option<i64> {
        let mut acc = 0i64;
        for (e, c) in self.terms() {
            if e < 0 {
                return None;
            }
            acc = acc.checked_add(c.checked_mul(x.checked_pow(e as u32)?)?)?;
        }
        Some(acc)
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(matrix: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    let n = matrix.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let mut m: Vec<Vec<LaurentPolynomial>> = matrix.to_vec();
    let mut sign = 1;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("fraction-free step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&d
    } else {
        d
    }
}

impl<'a> Add for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        let mut p = self.clone();
        for (e, c) in rhs.terms() {
            p.add_term(c, e);
        }
        p
    }
}

impl<'a> Sub for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl<'a> Neg for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl<'a> Mul for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (a, e) {
                (_, 0) => format!("{a}"),
                (1, 1) => "q".to_string(),
                (1, _) => format!("q^{e}"),
                (_, 1) => format!("{a}q"),
                _ => format!("{a}q^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = LaurentPolynomial::from_terms([(1, 1), (-1, 1)]);
        let sq = &p * &p;
        assert_eq!(sq, LaurentPolynomial::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn exact_division_and_determinant() {
        let a = LaurentPolynomial::from_terms([(1, 1), (0, -1)]);
        let b = LaurentPolynomial::from_terms([(2, 2), (-1, 3)]);
        assert_eq!((&a * &b).div_exact(&a), Some(b.clone()));
        assert_eq!(b.div_exact(&a), None);
        let m = vec![
            vec![LaurentPolynomial::zero(), a.clone()],
            vec![b.clone(), LaurentPolynomial::one()],
        ];
        assert_eq!(determinant(&m), -&(&a * &b));
        let int = |v: i64| LaurentPolynomial::monomial(v, 0);
        let m3 = vec![
            vec![int(2), int(-1), int(0)],
            vec![int(-1), int(2), int(-1)],
            vec![int(0), int(-1), int(2)],
        ];
        assert_eq!(determinant(&m3), int(4));
    }

    #[test]
    fn symmetric_normalization() {
        // t^3 - 3t^2 + t  ~  -t + 3 - t^-1 after sign and shift
        let p = LaurentPolynomial::from_terms([(3, 1), (2, -3), (1, 1)]);
        let n = p.normalize_symmetric();
        assert_eq!(n, LaurentPolynomial::from_terms([(1, -1), (0, 3), (-1, -1)]));
        let trefoil = LaurentPolynomial::from_terms([(2, -1), (1, 1), (0, -1)]);
        assert_eq!(
            trefoil.normalize_symmetric(),
            LaurentPolynomial::from_terms([(1, 1), (0, -1), (-1, 1)])
        );
    }
}
