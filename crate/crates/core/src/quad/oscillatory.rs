//! Zero-partition quadrature for oscillatory integrals on `(0, inf)`.

use super::gauss::gl15_panel;
use super::levin::{euler_average, Levin};
use super::QuadResult;
use crate::error::{Error, Result};
use crate::specfun::bessel::{j0_zero, j1_zero};
use rayon::prelude::*;

/// Where panel boundaries are placed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Partition {
    /// Zeros of `J0(scale * t)`.
    J0Zeros { scale: f64 },
    /// Zeros of `J1(scale * t)`.
    J1Zeros { scale: f64 },
    /// Equal panels of the given width.
    Uniform { width: f64 },
}

impl Partition {
    fn point(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        match *self {
            Partition::J0Zeros { scale } => j0_zero(k).expect("k >= 1") / scale,
            Partition::J1Zeros { scale } => j1_zero(k).expect("k >= 1") / scale,
            Partition::Uniform { width } => width * k as f64,
        }
    }
}

/// An oscillatory integrand with its decay exponent and panel layout.
pub struct OscillatorySpec<'a> {
    pub integrand: &'a (dyn Fn(f64) -> f64 + Sync),
    /// `p` with `|integrand| = O(t^{-p})`.
    pub envelope_decay: f64,
    pub partition: Partition,
    /// Gauss–Legendre sub-panels per partition interval.
    pub subpanels: usize,
}

const BATCH: usize = 16;
const MIN_TERMS: usize = 8;
const MAX_TERMS: usize = 400;

/// `int_0^inf f(t) dt` by panel sums between successive zeros, accelerated with Levin-u.
pub fn oscillatory_integrate(spec: &OscillatorySpec, tol: f64) -> Result<QuadResult> {
    if !(spec.envelope_decay > 0.0) {
        return Err(Error::Divergence(format!(
            "oscillatory_integrate: envelope decay {} gives no convergence",
            spec.envelope_decay
        )));
    }
    let sub = spec.subpanels.max(1);
    let f = spec.integrand;
    let panel = |k: usize| -> f64 {
        let (a, b) = (spec.partition.point(k), spec.partition.point(k + 1));
        let w = (b - a) / sub as f64;
        (0..sub).map(|i| gl15_panel(&f, a + w * i as f64, a + w * (i + 1) as f64)).sum()
    };

    let mut levin = Levin::default();
    let mut sums = Vec::new();
    let mut s = 0.0;
    let mut history: Vec<f64> = Vec::new();
    let mut best = (f64::NAN, f64::INFINITY);
    let mut k = 0;
    while k < MAX_TERMS {
        let terms: Vec<f64> = (k..k + BATCH).into_par_iter().map(panel).collect();
        for a in terms {
            if !a.is_finite() {
                return Err(Error::domain("oscillatory_integrate: integrand not finite"));
            }
            s += a;
            sums.push(s);
            let est = levin.push_real(s, a);
            history.push(est);
            let n = history.len();
            if n >= 3 {
                let d = (history[n - 1] - history[n - 2])
                    .abs()
                    .max((history[n - 2] - history[n - 3]).abs());
                if d < best.1 {
                    best = (est, d);
                }
                if n >= MIN_TERMS && d <= tol * est.abs().max(1e-300) {
                    return Ok(QuadResult {
                        value: est,
                        err_estimate: d,
                        n_evals: n * sub * 15,
                    });
                }
            }
        }
        k += BATCH;
    }
    let (e_val, e_err) = euler_average(&sums[sums.len().saturating_sub(40)..]);
    if e_err <= tol * e_val.abs() {
        return Ok(QuadResult { value: e_val, err_estimate: e_err, n_evals: sums.len() * sub * 15 });
    }
    let (estimate, err) = if best.1 <= e_err { best } else { (e_val, e_err) };
    Err(Error::Accuracy { estimate, err, context: "oscillatory_integrate".into() })
}
