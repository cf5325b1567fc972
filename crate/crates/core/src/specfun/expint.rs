//! Generalized exponential integral `E_a(z) = int_1^inf e^{-zu} u^{-a} du`
//! for real order `a > 0` and complex `z != 0` with `Re z >= 0`.
//!
//! Used for closed-form tails `int_T^inf t^{-a} e^{iwt} dt = T^{1-a} E_a(-iwT)`.

use super::gamma::{digamma_int, gamma};
use num_complex::Complex64;

const SERIES_RADIUS: f64 = 1.5;

/// `E_a(z)`; `a > 0`, `z != 0`, `Re z >= 0`.
pub fn expint_e(a: f64, z: Complex64) -> Complex64 {
    assert!(a > 0.0, "expint_e: order must be positive");
    assert!(z.norm() > 0.0, "expint_e: z must be nonzero");
    if z.norm() <= SERIES_RADIUS {
        series(a, z)
    } else {
        continued_fraction(a, z)
    }
}

pub(crate) fn series(a: f64, z: Complex64) -> Complex64 {
    let mz = -z;
    if a == a.floor() {
        let m = a as u32;
        let mut lead = Complex64::new(1.0, 0.0);
        for k in 1..m {
            lead = lead * mz / k as f64;
        }
        let mut sum = lead * (digamma_int(m) - z.ln());
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 0..200u32 {
            if k > 0 {
                pow = pow * mz / k as f64;
            }
            if k + 1 == m {
                continue;
            }
            let term = pow / (k as f64 - m as f64 + 1.0);
            sum -= term;
            if k > m && term.norm() < 1e-18 * sum.norm().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        let mut sum = gamma(1.0 - a) * z.powf(a - 1.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 0..200u32 {
            if k > 0 {
                pow = pow * mz / k as f64;
            }
            let term = pow / (1.0 - a + k as f64);
            sum -= term;
            if (k as f64) > a && term.norm() < 1e-18 * sum.norm().max(1e-300) {
                break;
            }
        }
        sum
    }
}

pub(crate) fn continued_fraction(a: f64, z: Complex64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut b = z + a;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let fi = i as f64;
        let an = -fi * (a - 1.0 + fi);
        b += 2.0;
        let mut den = an * d + b;
        if den.norm() < TINY {
            den = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / den;
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}
