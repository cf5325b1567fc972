//! `int_0^inf t^p prod_i J0(s_i t)^{m_i} dt` by Gauss–Legendre panels on `[0, T]`
//! and an analytic tail on `[T, inf)`.
//!
//! Beyond `T` each `J0(s t)` is replaced by its Hankel expansion
//! `Re[sqrt(2/(pi s t)) e^{i(st - pi/4)} sum_k (-i)^k b_k (st)^{-k}]`. Multiplying
//! out the powers leaves a finite sum of terms `d t^{-a} e^{iwt}`, each integrated
//! exactly as `T^{1-a} E_a(-iwT)`. Zero-frequency terms are integrated as
//! `T^{1-a}/(a-1)` and signal divergence when `a <= 1`.

use super::gauss::gl15_panel;
use super::QuadResult;
use crate::error::{Error, Result};
use crate::specfun::bessel::j0_unchecked;
use crate::specfun::expint::expint_e;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Product `t^{t_power} prod J0(scale * t)^{multiplicity}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselProduct {
    pub factors: Vec<(f64, u32)>,
    pub t_power: u32,
}

impl BesselProduct {
    pub fn eval(&self, t: f64) -> f64 {
        let mut v = t.powi(self.t_power as i32);
        for &(s, m) in &self.factors {
            v *= j0_unchecked(s * t).powi(m as i32);
        }
        v
    }

    fn total_multiplicity(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }
}

const ORDER: usize = 20;
const TAIL_START: f64 = 30.0;

type Series = Vec<Complex64>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let mut out = vec![Complex64::new(0.0, 0.0); ORDER + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate().take(ORDER + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn one() -> Series {
    let mut s = vec![Complex64::new(0.0, 0.0); ORDER + 1];
    s[0] = Complex64::new(1.0, 0.0);
    s
}

/// Hankel amplitude series `h(s t) = sum_k (-i)^k b_k s^{-k} t^{-k}`.
fn hankel_series(scale: f64) -> Series {
    let mut out = Vec::with_capacity(ORDER + 1);
    let mut b = 1.0;
    let mut phase = Complex64::new(1.0, 0.0);
    for k in 0..=ORDER {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            b *= odd * odd / (8.0 * k as f64 * scale);
            phase *= Complex64::new(0.0, -1.0);
        }
        out.push(phase * b);
    }
    out
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Tail terms grouped by frequency: `(omega, coefficients of t^{-(a0 + k)})`.
fn tail_terms(prod: &BesselProduct) -> Vec<(f64, Series)> {
    let mut terms: Vec<(f64, Series)> = vec![(0.0, one())];
    for &(s, m) in &prod.factors {
        let h = hankel_series(s);
        let hc: Series = h.iter().map(|c| c.conj()).collect();
        let mut hp = vec![one()];
        let mut hcp = vec![one()];
        for r in 1..=m as usize {
            hp.push(series_mul(&hp[r - 1], &h));
            hcp.push(series_mul(&hcp[r - 1], &hc));
        }
        let amp = (2.0 / (PI * s)).powf(0.5 * m as f64) * 0.5f64.powi(m as i32);
        let mut choices = Vec::new();
        for r in 0..=m {
            let shift = 2 * r as i32 - m as i32;
            let phase = Complex64::from_polar(1.0, -PI * shift as f64 / 4.0);
            let coef = phase * binomial(m, r) * amp;
            let ser: Series =
                series_mul(&hp[r as usize], &hcp[(m - r) as usize]).into_iter().map(|c| c * coef).collect();
            choices.push((shift as f64 * s, ser));
        }
        let mut next: Vec<(f64, Series)> = Vec::new();
        for (w0, s0) in &terms {
            for (w1, s1) in &choices {
                let w = w0 + w1;
                let prodser = series_mul(s0, s1);
                match next.iter_mut().find(|(wn, _)| (*wn - w).abs() <= 1e-13 * (1.0 + w.abs())) {
                    Some((_, acc)) => {
                        for (a, b) in acc.iter_mut().zip(prodser) {
                            *a += b;
                        }
                    }
                    None => next.push((w, prodser)),
                }
            }
        }
        terms = next;
    }
    terms
}

/// `int_0^inf t^p prod J0(s_i t)^{m_i} dt`.
pub fn bessel_product_integral(prod: &BesselProduct, tol: f64) -> Result<QuadResult> {
    if prod.factors.is_empty() || prod.factors.iter().any(|&(s, m)| !(s > 0.0) || m == 0) {
        return Err(Error::domain("bessel_product_integral: need positive scales and multiplicities"));
    }
    let n = prod.total_multiplicity();
    let a0 = 0.5 * n as f64 - prod.t_power as f64;
    if a0 <= 0.0 {
        return Err(Error::Divergence(format!(
            "integrand envelope t^{} does not decay",
            -a0
        )));
    }
    let s_min = prod.factors.iter().map(|f| f.0).fold(f64::INFINITY, f64::min);
    let w_max: f64 = prod.factors.iter().map(|&(s, m)| s * m as f64).sum();
    let width = PI.min(2.0 * PI / w_max);
    let t_target = TAIL_START.max(TAIL_START / s_min);
    let panels = (t_target / width).ceil() as usize;
    let t_end = panels as f64 * width;

    // tail first: it decides convergence cheaply
    let terms = tail_terms(prod);
    let scale_ref: f64 = terms.iter().map(|(_, s)| s[0].norm()).fold(0.0, f64::max);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut last_order = 0.0f64;
    for (w, ser) in &terms {
        for (k, d) in ser.iter().enumerate() {
            if d.norm() == 0.0 {
                continue;
            }
            let a = a0 + k as f64;
            let piece = if *w == 0.0 {
                if d.norm() <= 1e-12 * scale_ref * t_end.powi(k as i32) {
                    continue;
                }
                if a <= 1.0 {
                    return Err(Error::Divergence(format!(
                        "non-oscillating tail component t^-{a} is not integrable"
                    )));
                }
                Complex64::new(t_end.powf(1.0 - a) / (a - 1.0), 0.0)
            } else {
                expint_e(a, Complex64::new(0.0, -w * t_end)) * t_end.powf(1.0 - a)
            };
            let contrib = d * piece;
            tail += contrib;
            if k == ORDER {
                last_order = last_order.max(contrib.norm());
            }
        }
    }

    let f = |t: f64| prod.eval(t);
    let parts: Vec<f64> = (0..panels)
        .into_par_iter()
        .map(|i| gl15_panel(&f, i as f64 * width, (i + 1) as f64 * width))
        .collect();
    let body: f64 = parts.iter().sum();
    let abs_body: f64 = parts.iter().map(|p| p.abs()).sum();
    let value = body + tail.re;
    let err = last_order + 32.0 * f64::EPSILON * abs_body + tail.im.abs();
    if err > tol * value.abs().max(1e-6) {
        return Err(Error::Accuracy { estimate: value, err, context: "bessel_product_integral".into() });
    }
    Ok(QuadResult { value, err_estimate: err, n_evals: panels * 15 })
}
