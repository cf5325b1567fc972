//! Bessel functions `J0`, `J1`, `Y0`, `I0`, `K0` for real non-negative arguments.
//!
//! Three regimes are used for the oscillatory functions:
//!
//! * `t <= 4`: ascending power series,
//! * `4 < t < 25`: Miller backward recurrence normalised by `J0 + 2 sum J_2k = 1`,
//!   with `Y0` from the Neumann series,
//! * `t >= 25`: Hankel asymptotic expansion, truncated at its smallest term.
//!
//! The modified functions use the power series below `t = 30` (`K0`: below 2,
//! then a trapezoidal rule on its integral representation) and the asymptotic
//! series above. The scaled forms `I0(t)e^{-t}` and `K0(t)e^{t}` never overflow.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

const SERIES_MAX: f64 = 4.0;
const MILLER_MAX: f64 = 25.0;
const MODIFIED_SERIES_MAX: f64 = 30.0;
const K0_SERIES_MAX: f64 = 1.0;
/// Largest argument for which `I0(t)` is finite in binary64.
pub const I0_OVERFLOW: f64 = 713.0;

/// Requested relative accuracy for the iterative routines (zero finding).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    pub rel_tol: f64,
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        EvalAccuracy { rel_tol: 1e-14 }
    }
}

impl EvalAccuracy {
    pub fn new(rel_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-6) {
            return Err(Error::domain(format!("rel_tol must lie in (0, 1e-6), got {rel_tol}")));
        }
        Ok(EvalAccuracy { rel_tol })
    }
}

fn check_nonneg(name: &str, t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("{name}: argument must be finite and >= 0, got {t}")));
    }
    Ok(())
}

fn check_pos(name: &str, t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("{name}: argument must be finite and > 0, got {t}")));
    }
    Ok(())
}

/// `J0(t)` for `t >= 0`.
pub fn j0(t: f64) -> Result<f64> {
    check_nonneg("j0", t)?;
    Ok(j0_unchecked(t))
}

/// `J1(t)` for `t >= 0`.
pub fn j1(t: f64) -> Result<f64> {
    check_nonneg("j1", t)?;
    Ok(j1_unchecked(t))
}

/// `Y0(t)` for `t > 0`.
pub fn y0(t: f64) -> Result<f64> {
    check_pos("y0", t)?;
    Ok(y0_unchecked(t))
}

/// `Y1(t)` for `t > 0`.
pub fn y1(t: f64) -> Result<f64> {
    check_pos("y1", t)?;
    Ok(y1_unchecked(t))
}

/// `I0(t)` for `t >= 0`; overflow is reported rather than returned as infinity.
pub fn i0(t: f64) -> Result<f64> {
    check_nonneg("i0", t)?;
    if t > I0_OVERFLOW {
        return Err(Error::Overflow(format!("i0({t}) exceeds binary64; use i0_scaled")));
    }
    Ok(i0_scaled_unchecked(t) * t.exp())
}

/// The pair `(I0(t)e^{-t}, t)`, so that `I0(t) = pair.0 * exp(pair.1)`.
pub fn i0_scaled(t: f64) -> Result<(f64, f64)> {
    check_nonneg("i0_scaled", t)?;
    Ok((i0_scaled_unchecked(t), t))
}

/// `K0(t)` for `t > 0`. Underflows gracefully to 0 for very large `t`.
pub fn k0(t: f64) -> Result<f64> {
    check_pos("k0", t)?;
    Ok(k0_unchecked(t))
}

/// `K0(t)e^{t}` for `t > 0`.
pub fn k0_scaled(t: f64) -> Result<f64> {
    check_pos("k0_scaled", t)?;
    Ok(k0_scaled_unchecked(t))
}

pub(crate) fn j0_unchecked(t: f64) -> f64 {
    let t = t.abs();
    if t <= SERIES_MAX {
        j0_series(t)
    } else if t < MILLER_MAX {
        miller(t).0
    } else {
        j0_asymptotic(t)
    }
}

pub(crate) fn j1_unchecked(t: f64) -> f64 {
    let a = t.abs();
    let v = if a <= SERIES_MAX {
        j1_series(a)
    } else if a < MILLER_MAX {
        miller(a).1
    } else {
        j1_asymptotic(a)
    };
    if t < 0.0 {
        -v
    } else {
        v
    }
}

pub(crate) fn y0_unchecked(t: f64) -> f64 {
    if t <= SERIES_MAX {
        y0_series(t)
    } else if t < MILLER_MAX {
        miller(t).2
    } else {
        y0_asymptotic(t)
    }
}

pub(crate) fn y1_unchecked(t: f64) -> f64 {
    if t <= SERIES_MAX {
        y1_series(t)
    } else if t < MILLER_MAX {
        y1_neumann(t)
    } else {
        y1_asymptotic(t)
    }
}

pub(crate) fn i0_scaled_unchecked(t: f64) -> f64 {
    if t <= MODIFIED_SERIES_MAX {
        i0_series(t) * (-t).exp()
    } else {
        i0_scaled_asymptotic(t)
    }
}

pub(crate) fn k0_unchecked(t: f64) -> f64 {
    if t <= K0_SERIES_MAX {
        k0_series(t)
    } else {
        k0_scaled_unchecked(t) * (-t).exp()
    }
}

pub(crate) fn k0_scaled_unchecked(t: f64) -> f64 {
    if t <= K0_SERIES_MAX {
        k0_series(t) * t.exp()
    } else if t < MODIFIED_SERIES_MAX {
        k0_scaled_trapezoid(t)
    } else {
        k0_scaled_asymptotic(t)
    }
}

pub(crate) fn j0_series(t: f64) -> f64 {
    let z = -0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= z / (kf * kf);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

pub(crate) fn j1_series(t: f64) -> f64 {
    let z = -0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= z / (kf * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    0.5 * t * sum
}

pub(crate) fn y0_series(t: f64) -> f64 {
    let z = 0.25 * t * t;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -z / (kf * kf);
        harmonic += 1.0 / kf;
        let add = -term * harmonic;
        sum += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    (2.0 / PI) * (((0.5 * t).ln() + EULER_GAMMA) * j0_series(t) + sum)
}

/// Backward recurrence for `(J0, J1, Y0)` at moderate arguments.
pub(crate) fn miller(t: f64) -> (f64, f64, f64) {
    let start = ((t + 30.0 + 10.0 * t.cbrt()) as usize / 2 + 1) * 2;
    let mut jkp1 = 0.0;
    let mut jk = 1e-30;
    let mut even_sum = 0.0;
    let mut y_sum = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let jkm1 = (2.0 * k as f64 / t) * jk - jkp1;
        let m = k - 1;
        if m == 1 {
            j1 = jkm1;
        }
        if m >= 2 && m % 2 == 0 {
            even_sum += jkm1;
            let h = m / 2;
            let v = jkm1 / h as f64;
            y_sum += if h % 2 == 0 { v } else { -v };
        }
        jkp1 = jk;
        jk = jkm1;
        if jk.abs() > 1e200 {
            const S: f64 = 1e-200;
            jk *= S;
            jkp1 *= S;
            even_sum *= S;
            y_sum *= S;
            j1 *= S;
        }
    }
    let norm = jk + 2.0 * even_sum;
    let j0 = jk / norm;
    let y0 = (2.0 / PI) * (((0.5 * t).ln() + EULER_GAMMA) * j0 - 2.0 * y_sum / norm);
    (j0, j1 / norm, y0)
}

pub(crate) fn y1_series(t: f64) -> f64 {
    // (2/pi)(ln(t/2) + gamma) J1 - 2/(pi t) - (1/pi) sum (-1)^k (H_k + H_{k+1}) (t/2)^{2k+1} / (k!(k+1)!)
    let h = 0.5 * t;
    let z = h * h;
    let mut term = h;
    let mut hk = 0.0;
    let mut hk1 = 1.0;
    let mut sum = term * (hk + hk1);
    for k in 1..200 {
        let kf = k as f64;
        term *= -z / (kf * (kf + 1.0));
        hk += 1.0 / kf;
        hk1 += 1.0 / (kf + 1.0);
        let add = term * (hk + hk1);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    (2.0 / PI) * ((h.ln() + EULER_GAMMA) * j1_series(t) - 1.0 / t) - sum / PI
}

/// `Y1 = (2/pi)[(ln(t/2) + gamma) J1 - J0/t + sum_k (-1)^k (J_{2k-1} - J_{2k+1})/k]`,
/// the derivative of the Neumann series of `Y0`, over a normalised Miller sequence.
pub(crate) fn y1_neumann(t: f64) -> f64 {
    let start = ((t + 30.0 + 10.0 * t.cbrt()) as usize / 2 + 1) * 2;
    let mut js = vec![0.0f64; start + 2];
    js[start] = 1e-30;
    for k in (1..=start).rev() {
        js[k - 1] = (2.0 * k as f64 / t) * js[k] - js[k + 1];
        if js[k - 1].abs() > 1e200 {
            for v in js.iter_mut().skip(k - 1) {
                *v *= 1e-200;
            }
        }
    }
    let norm = js[0] + 2.0 * js.iter().skip(2).step_by(2).sum::<f64>();
    let j = |m: usize| js[m] / norm;
    let mut sum = 0.0;
    let mut k = 1;
    while 2 * k < start {
        let v = (j(2 * k - 1) - j(2 * k + 1)) / k as f64;
        sum += if k % 2 == 0 { v } else { -v };
        k += 1;
    }
    (2.0 / PI) * (((0.5 * t).ln() + EULER_GAMMA) * j(1) - j(0) / t + sum)
}

pub(crate) fn y1_asymptotic(t: f64) -> f64 {
    let (p, q) = hankel_pq(1, t);
    let (c0, s0) = shifted_phase(t);
    let (c, s) = (s0, -c0);
    (2.0 / (PI * t)).sqrt() * (p * s + q * c)
}

/// Hankel amplitudes `(P_nu, Q_nu)` for `nu` in {0, 1}.
fn hankel_pq(nu: u32, t: f64) -> (f64, f64) {
    let mu = 4.0 * (nu * nu) as f64;
    let mut a = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..120u32 {
        let odd = (2 * k - 1) as f64;
        let next = a * (mu - odd * odd) / (8.0 * k as f64 * t);
        if next.abs() >= prev {
            break;
        }
        prev = next.abs();
        a = next;
        if k % 2 == 0 {
            if (k / 2) % 2 == 0 {
                p += a;
            } else {
                p -= a;
            }
        } else if ((k - 1) / 2) % 2 == 0 {
            q += a;
        } else {
            q -= a;
        }
        if a.abs() < 1e-18 {
            break;
        }
    }
    (p, q)
}

/// `cos(t - pi/4)` and `sin(t - pi/4)` without rounding `t - pi/4`.
fn shifted_phase(t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
}

pub(crate) fn j0_asymptotic(t: f64) -> f64 {
    let (p, q) = hankel_pq(0, t);
    let (c, s) = shifted_phase(t);
    (2.0 / (PI * t)).sqrt() * (p * c - q * s)
}

pub(crate) fn y0_asymptotic(t: f64) -> f64 {
    let (p, q) = hankel_pq(0, t);
    let (c, s) = shifted_phase(t);
    (2.0 / (PI * t)).sqrt() * (p * s + q * c)
}

pub(crate) fn j1_asymptotic(t: f64) -> f64 {
    let (p, q) = hankel_pq(1, t);
    // t - 3pi/4 = (t - pi/4) - pi/2
    let (c0, s0) = shifted_phase(t);
    let (c, s) = (s0, -c0);
    (2.0 / (PI * t)).sqrt() * (p * c - q * s)
}

pub(crate) fn i0_series(t: f64) -> f64 {
    let z = 0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        let kf = k as f64;
        term *= z / (kf * kf);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Terms `b_k / t^k` of the common modified-Bessel asymptotic series.
fn modified_asymptotic(t: f64, alternating: bool) -> f64 {
    let mut b = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200u32 {
        let odd = (2 * k - 1) as f64;
        let next = b * odd * odd / (8.0 * k as f64 * t);
        if next >= prev {
            break;
        }
        prev = next;
        b = next;
        sum += if alternating && k % 2 == 1 { -b } else { b };
        if b < 1e-18 * sum {
            break;
        }
    }
    sum
}

pub(crate) fn i0_scaled_asymptotic(t: f64) -> f64 {
    modified_asymptotic(t, false) / (2.0 * PI * t).sqrt()
}

pub(crate) fn k0_scaled_asymptotic(t: f64) -> f64 {
    modified_asymptotic(t, true) * (PI / (2.0 * t)).sqrt()
}

pub(crate) fn k0_series(t: f64) -> f64 {
    let z = 0.25 * t * t;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= z / (kf * kf);
        harmonic += 1.0 / kf;
        let add = term * harmonic;
        sum += add;
        if add < 1e-18 * sum {
            break;
        }
    }
    -((0.5 * t).ln() + EULER_GAMMA) * i0_series(t) + sum
}

/// `K0(t)e^t = int_0^inf exp(-2t sinh^2(u/2)) du` by the trapezoidal rule.
pub(crate) fn k0_scaled_trapezoid(t: f64) -> f64 {
    const H: f64 = 0.1;
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let s = (0.5 * H * k as f64).sinh();
        let g = (-2.0 * t * s * s).exp();
        sum += g;
        if g < 1e-19 {
            break;
        }
        k += 1;
    }
    H * sum
}

/// The `k`-th positive zero of `J0`.
pub fn j0_zero(k: usize) -> Result<f64> {
    j0_zero_with(k, EvalAccuracy::default())
}

/// The `k`-th positive zero of `J0` to the requested relative accuracy.
pub fn j0_zero_with(k: usize, acc: EvalAccuracy) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("j0_zero: k must be >= 1"));
    }
    let beta = (k as f64 - 0.25) * PI;
    let mut t = beta + 1.0 / (8.0 * beta);
    for _ in 0..50 {
        let step = j0_unchecked(t) / j1_unchecked(t);
        t += step;
        if step.abs() <= acc.rel_tol * t {
            break;
        }
    }
    Ok(t)
}

/// The `k`-th positive zero of `J1`.
pub fn j1_zero(k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("j1_zero: k must be >= 1"));
    }
    let beta = (k as f64 + 0.25) * PI;
    let mut t = beta - 3.0 / (8.0 * beta);
    for _ in 0..50 {
        let f = j1_unchecked(t);
        let df = j0_unchecked(t) - f / t;
        let step = f / df;
        t -= step;
        if step.abs() <= 1e-15 * t {
            break;
        }
    }
    Ok(t)
}
