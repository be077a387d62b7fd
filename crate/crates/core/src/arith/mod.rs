mod rational;

pub use rational::Rational;

use std::fmt::{Debug, Display};

/// Coefficient field used by the homology backends.
pub trait Field: Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn from_i64(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero(&self) -> Self {
        Rational::from_int(0)
    }
    fn one(&self) -> Self {
        Rational::from_int(1)
    }
    fn from_i64(&self, n: i64) -> Self {
        Rational::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Element of the prime field F_p. The modulus travels with the value so
/// the field can be chosen at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 2);
        let m = modulus as i64;
        Fp { value: value.rem_euclid(m) as u32, modulus }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Field for Fp {
    fn zero(&self) -> Self {
        Fp::new(0, self.modulus)
    }
    fn one(&self) -> Self {
        Fp::new(1, self.modulus)
    }
    fn from_i64(&self, n: i64) -> Self {
        Fp::new(n, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp::new(self.value as i64 - rhs.value as i64, self.modulus)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp::new((self.value as u64 * rhs.value as u64 % self.modulus as u64) as i64, self.modulus)
    }
    fn neg(&self) -> Self {
        Fp::new(-(self.value as i64), self.modulus)
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        // Fermat; modulus is assumed prime
        let mut base = self.value as u64;
        let m = self.modulus as u64;
        let mut exp = m - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Fp::new(acc as i64, self.modulus)
    }
}

/// Runtime choice of coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientField {
    Rational,
    Prime(u32),
}

impl CoefficientField {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
            return Some(CoefficientField::Rational);
        }
        let digits = s.strip_prefix("F").or_else(|| s.strip_prefix("Z/")).unwrap_or(s);
        let p: u32 = digits.parse().ok()?;
        is_prime(p).then_some(CoefficientField::Prime(p))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
