//! Exact Wick-rotation algebra.
//!
//! With `c_l = (J + iY)^l + (J - iY)^l`, every odd power `J^{2j+1}` has a unique
//! rational expansion in the basis `B_j = {J^k c_{2j+1-k} : k = 0..j}`. The odd-`k`
//! coefficients give the integer weights `q_m` of the damped Bessel-moment form
//! of the odd-step densities
//!
//! ```text
//! p_{2j+1}(x) = sum_m q_m int_0^inf I0(xt) I0(t)^{2m+1} (K0(t)/pi)^{2(j-m)} xt dt.
//! ```

mod poly;

pub use poly::RationalPolyJY;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use poly::binomial;

/// Rational coefficients expressing `J^{2j+1}` in `B_j`, and the derived `q_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct WickDecomposition {
    pub j: u32,
    /// `lambda[k]` multiplies `J^k c_{2j+1-k}`.
    pub lambda: Vec<BigRational>,
    /// `(m, q_m)` for `m = 0..=(j-1)/2`.
    pub feynman_q: Vec<(u32, BigRational)>,
}

/// `c_l = 2 sum_{r even} C(l, r) J^{l-r} (iY)^r`, with `i^2 = -1` folded into signs.
pub fn hankel_power_sum(l: u32) -> RationalPolyJY {
    let mut out = RationalPolyJY::zero();
    for r in (0..=l).step_by(2) {
        let sign = if (r / 2) % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(binomial(l, r) * 2 * sign);
        out = &out + &RationalPolyJY::monomial(l - r, r, c);
    }
    out
}

/// `J^k c_{2j+1-k}`, the `k`-th member of `B_j`.
pub fn basis_member(j: u32, k: u32) -> RationalPolyJY {
    &RationalPolyJY::j_power(k) * &hankel_power_sum(2 * j + 1 - k)
}

/// Solve `J^{2j+1} = sum_k lambda_k J^k c_{2j+1-k}` exactly.
pub fn wick_decompose(j: u32) -> Result<WickDecomposition> {
    if j < 1 {
        return Err(Error::domain("wick_decompose: j must be >= 1"));
    }
    let n = (j + 1) as usize;
    let top = 2 * j + 1;
    let basis: Vec<RationalPolyJY> = (0..=j).map(|k| basis_member(j, k)).collect();
    // row i <-> monomial J^{2j+1-2i} Y^{2i}; all coefficients are integers
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let (dj, dy) = (top - 2 * i as u32, 2 * i as u32);
            let mut row: Vec<BigInt> = basis.iter().map(|b| b.coeff(dj, dy).to_integer()).collect();
            row.push(if i == 0 { BigInt::one() } else { BigInt::zero() });
            row
        })
        .collect();
    let lambda = bareiss_solve(&mut m)?;

    let mut recon = RationalPolyJY::zero();
    for (l, b) in lambda.iter().zip(&basis) {
        recon = &recon + &b.scale(l);
    }
    let residual = &recon - &RationalPolyJY::j_power(top);
    if !residual.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "reconstruction of J^{top} leaves {residual}"
        )));
    }

    let mut feynman_q = Vec::new();
    for mm in 0..=(j - 1) / 2 {
        let k = (2 * mm + 1) as usize;
        let sign = if (j - mm + 1) % 2 == 0 { 1 } else { -1 };
        let factor = BigInt::from(2 * sign) * BigInt::from(4).pow(j - mm);
        feynman_q.push((mm, &lambda[k] * BigRational::from_integer(factor)));
    }
    Ok(WickDecomposition { j, lambda, feynman_q })
}

/// Fraction-free (Bareiss) elimination on an augmented integer system, then
/// rational back substitution.
fn bareiss_solve(m: &mut [Vec<BigInt>]) -> Result<Vec<BigRational>> {
    let n = m.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero()).ok_or_else(|| {
            Error::InternalConsistency(format!("singular basis matrix at column {k}"))
        })?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for c in k + 1..=n {
                let v = (&m[i][c] * &m[k][k] - &m[i][k] * &m[k][c]) / &prev;
                m[i][c] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for c in i + 1..n {
            acc -= BigRational::from_integer(m[i][c].clone()) * &x[c];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// `(m, q_m)` of the damped-moment representation of `p_{2j+1}`.
pub fn feynman_coefficients(j: u32) -> Result<Vec<(u32, BigRational)>> {
    Ok(wick_decompose(j)?.feynman_q)
}

/// `q_m` as floats.
pub fn feynman_coefficients_f64(j: u32) -> Result<Vec<(u32, f64)>> {
    use num_traits::ToPrimitive;
    Ok(feynman_coefficients(j)?
        .into_iter()
        .map(|(m, q)| (m, q.to_f64().unwrap_or(f64::NAN)))
        .collect())
}

/// Y-degrees of the members of `B_j`, read off the expanded polynomials.
pub fn degree_profile(j: u32) -> Vec<u32> {
    (0..=j).map(|k| basis_member(j, k).y_degree()).collect()
}

/// Closed form of the Y-degree of `J^k c_{2j+1-k}`.
pub fn degree_formula(j: u32, k: u32) -> u32 {
    if k % 2 == 0 {
        2 * j - k
    } else {
        2 * j + 1 - k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_hankel_sums() {
        assert_eq!(hankel_power_sum(2).to_string(), "2J^2 - 2Y^2");
        assert_eq!(hankel_power_sum(3).to_string(), "2J^3 - 6JY^2");
        assert_eq!(hankel_power_sum(5).to_string(), "2J^5 - 20J^3Y^2 + 10JY^4");
    }

    #[test]
    fn low_order_decompositions() {
        let d = wick_decompose(1).unwrap();
        assert_eq!(d.lambda, vec![r(-1, 4), r(3, 4)]);
        let d = wick_decompose(2).unwrap();
        assert_eq!(d.lambda, vec![r(3, 16), r(-15, 16), r(5, 4)]);
    }
}
