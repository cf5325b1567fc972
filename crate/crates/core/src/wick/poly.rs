use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact polynomial in the formal symbols `J` and `Y` with rational coefficients.
///
/// Keys are `(deg_J, deg_Y)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolyJY {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl RationalPolyJY {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(deg_j: u32, deg_y: u32, coeff: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_j, deg_y, coeff);
        p
    }

    /// `J^k`.
    pub fn j_power(k: u32) -> Self {
        Self::monomial(k, 0, BigRational::one())
    }

    fn add_term(&mut self, deg_j: u32, deg_y: u32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (deg_j, deg_y);
        let sum = match self.terms.remove(&key) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_j: u32, deg_y: u32) -> BigRational {
        self.terms.get(&(deg_j, deg_y)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    /// Highest power of `Y` present (0 for the zero polynomial).
    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    /// Numeric value at `J = j`, `Y = y`.
    pub fn eval(&self, j: f64, y: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(&(a, b), c)| c.to_f64().unwrap_or(f64::NAN) * j.powi(a as i32) * y.powi(b as i32))
            .sum()
    }
}

impl Add for &RationalPolyJY {
    type Output = RationalPolyJY;
    fn add(self, rhs: &RationalPolyJY) -> RationalPolyJY {
        let mut out = self.clone();
        for (&(a, b), v) in &rhs.terms {
            out.add_term(a, b, v.clone());
        }
        out
    }
}

impl Neg for &RationalPolyJY {
    type Output = RationalPolyJY;
    fn neg(self) -> RationalPolyJY {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &RationalPolyJY {
    type Output = RationalPolyJY;
    fn sub(self, rhs: &RationalPolyJY) -> RationalPolyJY {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolyJY {
    type Output = RationalPolyJY;
    fn mul(self, rhs: &RationalPolyJY) -> RationalPolyJY {
        let mut out = RationalPolyJY::zero();
        for (&(a1, b1), v1) in &self.terms {
            for (&(a2, b2), v2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, v1 * v2);
            }
        }
        out
    }
}

impl fmt::Display for RationalPolyJY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || (a == 0 && b == 0) {
                write!(f, "{mag}")?;
            }
            for (sym, d) in [("J", a), ("Y", b)] {
                match d {
                    0 => {}
                    1 => write!(f, "{sym}")?,
                    _ => write!(f, "{sym}^{d}")?,
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}
