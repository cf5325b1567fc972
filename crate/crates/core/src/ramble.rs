//! Ramble integrals `W_n(s) = int_0^n x^s p_n(x) dx`, their continuation to the
//! left half-plane for odd `n`, and the sum rule linking `W_{2j+2}` to `W_{2j+1}`.

use crate::error::{Error, Result};
use crate::moments::{maclaurin_table, MaclaurinTable, MomentPart};
use crate::quad::TanhSinhRule;
use crate::walks::{breakpoints, density_for_table, p3_coefficients, RoutePolicy};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Density values on nested tanh-sinh nodes of each smooth piece of `[0, n]`.
#[derive(Debug, Clone)]
pub struct DensityTable {
    pub n: u32,
    pub level: u32,
    pub policy: RoutePolicy,
    /// `(x, unit weight, level introduced, p_n(x))`.
    nodes: Vec<(f64, f64, u32, f64)>,
}

/// Default refinement level of [`DensityTable`].
pub const TABLE_LEVEL: u32 = 6;

impl DensityTable {
    pub fn build(n: u32, level: u32, policy: RoutePolicy, tol: f64) -> Result<DensityTable> {
        if n < 2 {
            return Err(Error::domain("DensityTable requires n >= 2"));
        }
        let pts = breakpoints(n);
        let mut raw = Vec::new();
        for w in pts.windows(2) {
            for l in 0..=level {
                for (x, wt) in TanhSinhRule::fresh_nodes(w[0], w[1], l) {
                    raw.push((x, wt, l));
                }
            }
        }
        let nodes = raw
            .par_iter()
            .map(|&(x, wt, l)| Ok((x, wt, l, density_for_table(n, x, policy, tol)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DensityTable { n, level, policy, nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `int_from^n f(x) p_n(x) dx`; `from` must be a breakpoint. The error is the
    /// difference from the next coarser level.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, from: f64, f: F) -> (Complex64, f64) {
        let mut fine = Complex64::new(0.0, 0.0);
        let mut coarse = Complex64::new(0.0, 0.0);
        let h = 0.5f64.powi(self.level as i32);
        for &(x, w, l, p) in &self.nodes {
            if x < from {
                continue;
            }
            let v = f(x) * (w * p);
            fine += v;
            if l < self.level {
                coarse += v;
            }
        }
        let fine = fine * h;
        let coarse = coarse * (2.0 * h);
        (fine, (fine - coarse).norm())
    }

    /// `int_from^n x^s p_n(x) dx`.
    pub fn moment(&self, s: Complex64, from: f64) -> (Complex64, f64) {
        let (v, e) = self.integrate(from, |x| (s * x.ln()).exp());
        (v + self.endpoint_mass(s), e)
    }

    /// Mass of `x^s p_2(x)` above the last node, where `p_2 ~ 1/(pi sqrt(2 - x))`
    /// and nodes cannot come closer to 2 than one ulp.
    fn endpoint_mass(&self, s: Complex64) -> Complex64 {
        if self.n != 2 {
            return Complex64::new(0.0, 0.0);
        }
        let last = self.nodes.iter().map(|n| n.0).filter(|&x| x < 2.0).fold(0.0, f64::max);
        (s * 2f64.ln()).exp() * (2.0 * (2.0 - last).sqrt() / PI)
    }
}

fn cached_density_table(n: u32) -> Result<Arc<DensityTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DensityTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("density table cache").get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(DensityTable::build(n, TABLE_LEVEL, RoutePolicy::Best, 1e-12)?);
    cache.lock().expect("density table cache").insert(n, t.clone());
    Ok(t)
}

/// A complex value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl ComplexValue {
    fn new(v: Complex64, err: f64) -> Self {
        ComplexValue { re: v.re, im: v.im, err }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// `W_n(s) = int_0^n x^s p_n(x) dx` for `Re s > -2` (`Re s > -1` when `n = 2`).
pub fn ramble_direct(n: u32, s: Complex64, tol: f64) -> Result<ComplexValue> {
    if n < 2 {
        return Err(Error::domain("ramble_direct: n must be >= 2"));
    }
    let bound = if n == 2 { -1.0 } else { -2.0 };
    if !(s.re > bound) || !s.im.is_finite() {
        return Err(Error::domain(format!("ramble_direct: need Re s > {bound}, got {s}")));
    }
    let table = cached_density_table(n)?;
    let (v, e) = table.moment(s, 0.0);
    if e > tol * v.norm().max(1e-6) {
        return Err(Error::Accuracy { estimate: v.re, err: e, context: format!("W_{n}({s})") });
    }
    Ok(ComplexValue::new(v, e))
}

/// Number of Maclaurin coefficients held by a continuation (`j >= 2`).
pub const CONTINUATION_TERMS: u32 = 80;
/// Number of `p_3` coefficients, which come from an exact recurrence.
pub const P3_CONTINUATION_TERMS: usize = 400;

/// `W_{2j+1}(-z) = sum_k r_{2j+1,k}/(2k+2-z) + int_1^{2j+1} x^{-z} p_{2j+1}(x) dx`.
#[derive(Debug, Clone)]
pub struct RambleContinuation {
    pub j: u32,
    table: Arc<MaclaurinTable>,
    density: Arc<DensityTable>,
}

impl RambleContinuation {
    pub fn new(j: u32) -> Result<RambleContinuation> {
        if j < 1 {
            return Err(Error::domain("RambleContinuation: j must be >= 1"));
        }
        let table = if j == 1 {
            let coeffs = p3_coefficients(P3_CONTINUATION_TERMS);
            let n = coeffs.len();
            MaclaurinTable {
                j,
                per_m_parts: vec![MomentPart { m: 0, q: 6.0, values: coeffs.clone(), errs: vec![0.0; n] }],
                errs: vec![0.0; n],
                underflow: vec![false; n],
                coeffs,
            }
        } else {
            maclaurin_table(j, CONTINUATION_TERMS, 1e-14)?
        };
        let density = cached_density_table(2 * j + 1)?;
        Ok(RambleContinuation { j, table: Arc::new(table), density })
    }

    /// Shared instance per `j`.
    pub fn cached(j: u32) -> Result<Arc<RambleContinuation>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RambleContinuation>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = cache.lock().expect("continuation cache").get(&j) {
            return Ok(c.clone());
        }
        let c = Arc::new(RambleContinuation::new(j)?);
        cache.lock().expect("continuation cache").insert(j, c.clone());
        Ok(c)
    }

    pub fn series_coeffs(&self) -> &[f64] {
        &self.table.coeffs
    }

    pub fn k_max(&self) -> usize {
        self.table.coeffs.len() - 1
    }

    /// `int_1^{2j+1} x^{-z} p_{2j+1}(x) dx`; entire in `z`.
    pub fn tail_integral(&self, z: Complex64) -> (Complex64, f64) {
        self.density.moment(-z, 1.0)
    }

    /// `sum_k r_k / (2k+2-z)`. Terms up to just past the nearest pole are added
    /// exactly; the rest is Levin-accelerated per moment family.
    pub fn pole_series(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let k_pole = ((z.re - 2.0) / 2.0).round();
        if z.im.abs() < 1e-12 && k_pole >= 0.0 && (z.re - (2.0 * k_pole + 2.0)).abs() < 1e-12 {
            let k = k_pole as usize;
            let residue = self.table.coeffs.get(k).map(|r| -r).unwrap_or(f64::NAN);
            return Err(Error::Pole { location: 2.0 * k_pole + 2.0, residue });
        }
        let n = self.table.coeffs.len();
        let split = ((z.re / 2.0).ceil().max(0.0) as usize + 4).min(n.saturating_sub(8));
        let w = |k: usize| 1.0 / (Complex64::new(2.0 * k as f64 + 2.0, 0.0) - z);
        let head: Complex64 = (0..split).map(|k| w(k) * self.table.coeffs[k]).sum();
        let (rest, err) = self.table.weighted_sum(split, w);
        Ok((head + rest, err))
    }

    /// `W_{2j+1}(-z)` and an absolute error estimate, without an accuracy check.
    pub fn value(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let (s, es) = self.pole_series(z)?;
        let (t, et) = self.tail_integral(z);
        Ok((s + t, es + et))
    }

    /// `W_{2j+1}(-z)` for `z` off the positive even integers.
    pub fn eval(&self, z: Complex64, tol: f64) -> Result<ComplexValue> {
        let (v, e) = self.value(z)?;
        if e > tol * v.norm().max(1e-6) {
            return Err(Error::Accuracy { estimate: v.re, err: e, context: format!("W_{}(-{z})", 2 * self.j + 1) });
        }
        Ok(ComplexValue::new(v, e))
    }
}

/// `W_{2j+1}(-z)` by analytic continuation.
pub fn ramble_continued(j: u32, z: Complex64, tol: f64) -> Result<ComplexValue> {
    RambleContinuation::cached(j)?.eval(z, tol)
}

/// Residue of `W_{2j+1}(s)` at `s = -2k-2`, read off as the mean of
/// `(s + 2k + 2) W(s)` at `s = -2k-2 +- delta`. The odd part of the regular
/// remainder cancels, leaving an `O(delta^2)` bias.
pub fn residue_estimate(j: u32, k: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain("residue_estimate: delta must lie in (0, 1)"));
    }
    let cont = RambleContinuation::cached(j)?;
    let pole = 2.0 * k as f64 + 2.0;
    let side = |d: f64| -> Result<f64> {
        let (v, _) = cont.value(Complex64::new(pole + d, 0.0))?;
        Ok(-d * v.re)
    };
    Ok(0.5 * (side(delta)? + side(-delta)?))
}

/// Both sides of `W_{2j+2}(nu) = sum_m C(nu/2, m)^2 W_{2j+1}(nu - 2m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumRuleReport {
    pub j: u32,
    pub nu_re: f64,
    pub nu_im: f64,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub residual: f64,
    pub terms: usize,
    /// True when every weight past the last nonzero one vanishes exactly.
    pub truncated: bool,
    pub tail_estimate: f64,
}

/// `Gamma(a+1) / (Gamma(m+1) Gamma(a-m+1))` as a falling-factorial product, which
/// is exactly zero once `a - m + 1` reaches a pole of Gamma.
fn binomial_weight(a: Complex64, m: usize) -> Complex64 {
    let mut c = Complex64::new(1.0, 0.0);
    for i in 1..=m {
        c *= (a - (i as f64 - 1.0)) / i as f64;
    }
    c
}

/// Check the sum rule at `(j, nu)` with `m_max` terms on the right.
pub fn sum_rule_check(j: u32, nu: Complex64, m_max: usize, tol: f64) -> Result<SumRuleReport> {
    if j < 1 {
        return Err(Error::domain("sum_rule_check: j must be >= 1"));
    }
    if m_max < 10 {
        return Err(Error::domain("sum_rule_check: m_max must be >= 10"));
    }
    if nu.im == 0.0 && nu.re < 0.0 && (nu.re / 2.0).fract() == 0.0 {
        return Err(Error::domain("sum_rule_check: nu must avoid the negative even integers"));
    }
    if !(nu.re > -2.0) {
        return Err(Error::domain("sum_rule_check: W_{2j+2}(nu) needs Re nu > -2"));
    }
    let lhs = ramble_direct(2 * j + 2, nu, tol)?;
    let cont = RambleContinuation::cached(j)?;
    let odd = cached_density_table(2 * j + 1)?;
    let half = nu / 2.0;
    let weights: Vec<Complex64> = (0..=m_max).map(|m| binomial_weight(half, m)).collect();
    let terms: Vec<(Complex64, f64)> = weights
        .par_iter()
        .enumerate()
        .map(|(m, w)| {
            let wsq = w * w;
            if wsq.norm() == 0.0 {
                return Ok((Complex64::new(0.0, 0.0), 0.0));
            }
            let s = nu - 2.0 * m as f64;
            let (val, err) = if s.re > 0.0 { odd.moment(s, 0.0) } else { cont.value(-s)? };
            Ok((wsq * val, wsq.norm() * err))
        })
        .collect::<Result<_>>()?;
    let term_err: f64 = terms.iter().map(|t| t.1).sum();
    let terms: Vec<Complex64> = terms.into_iter().map(|t| t.0).collect();
    let last_nonzero = weights.iter().rposition(|w| w.norm() != 0.0).unwrap_or(0);
    let truncated = last_nonzero < m_max;
    let plain: Complex64 = terms.iter().sum();
    let (rhs, tail) = if truncated {
        (plain, 0.0)
    } else {
        // terms decay algebraically in m: accelerate past the first few
        let start = 4.min(terms.len());
        let head: Complex64 = terms[..start].iter().sum();
        let (acc, e) = crate::quad::levin_sum(&terms[start..]);
        (head + acc, e)
    };
    if tail + term_err > tol {
        return Err(Error::Accuracy {
            estimate: rhs.re,
            err: tail + term_err,
            context: "sum rule right-hand side".into(),
        });
    }
    let residual = (lhs.value() - rhs).norm();
    Ok(SumRuleReport {
        j,
        nu_re: nu.re,
        nu_im: nu.im,
        lhs,
        rhs: ComplexValue::new(rhs, tail + term_err),
        residual,
        terms: m_max + 1,
        truncated,
        tail_estimate: tail,
    })
}
