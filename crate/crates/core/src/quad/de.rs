//! Double-exponential quadrature.

use super::QuadResult;
use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Tail behaviour of a semi-infinite integrand, selecting the variable transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decay {
    /// `|f| ~ e^{-ct}`: `t = s exp(u - e^{-u})`.
    Exponential,
    /// `|f| ~ t^{-p}` with `p > 1`: `t = s exp(pi/2 sinh u)`.
    Algebraic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeOptions {
    /// Characteristic length of the integrand (its peak location is a good choice).
    pub scale: f64,
    pub decay: Decay,
    /// Number of step halvings after the initial step `h = 1/2`.
    pub max_level: u32,
}

impl Default for DeOptions {
    fn default() -> Self {
        DeOptions { scale: 1.0, decay: Decay::Exponential, max_level: 8 }
    }
}

/// `int_0^inf f(t) dt` for an exponentially damped `f`.
pub fn de_integrate<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadResult> {
    de_integrate_with(f, tol, DeOptions::default())
}

fn transform(decay: Decay, scale: f64, u: f64) -> (f64, f64) {
    match decay {
        Decay::Exponential => {
            let e = (-u).exp();
            let t = scale * (u - e).exp();
            (t, t * (1.0 + e))
        }
        Decay::Algebraic => {
            let t = scale * (FRAC_PI_2 * u.sinh()).exp();
            (t, t * FRAC_PI_2 * u.cosh())
        }
    }
}

/// `int_0^inf f(t) dt` with explicit transform options.
pub fn de_integrate_with<F: Fn(f64) -> f64>(f: F, tol: f64, opts: DeOptions) -> Result<QuadResult> {
    if !(opts.scale > 0.0) {
        return Err(Error::domain("de_integrate: scale must be positive"));
    }
    let mut evals = 0usize;
    let mut node = |u: f64| -> Result<Option<(f64, f64)>> {
        let (t, w) = transform(opts.decay, opts.scale, u);
        if !(t > 1e-300) || !t.is_finite() || !w.is_finite() {
            return Ok(None);
        }
        evals += 1;
        let g = f(t) * w;
        if !g.is_finite() {
            return Err(Error::domain(format!("de_integrate: integrand not finite at t = {t:e}")));
        }
        Ok(Some((g, g.abs())))
    };

    let h0 = 0.5;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut peak = 0.0f64;
    let mut bounds = [0i64; 2];
    for (side, dir) in [(0usize, 1i64), (1usize, -1i64)] {
        let mut small = 0;
        let mut k = if dir == 1 { 0 } else { -1 };
        loop {
            let u = k as f64 * h0;
            let Some((g, a)) = node(u)? else { break };
            sum += g;
            abs_sum += a;
            peak = peak.max(a);
            bounds[side] = k;
            if a <= 1e-20 * peak && k.abs() >= 6 {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            if k.abs() > 400 {
                break;
            }
            k += dir;
        }
    }
    let (k_hi, k_lo) = (bounds[0], bounds[1]);
    let mut estimate = sum * h0;
    let mut h = h0;
    let mut last_err = f64::INFINITY;
    for level in 1..=opts.max_level {
        h *= 0.5;
        let steps = 1i64 << level;
        let first = k_lo * steps;
        let last = k_hi * steps;
        let mut i = first + 1;
        while i < last {
            if let Some((g, a)) = node(i as f64 * h)? {
                sum += g;
                abs_sum += a;
            }
            i += 2;
        }
        let next = sum * h;
        let err = (next - estimate).abs();
        let floor = 64.0 * f64::EPSILON * abs_sum * h;
        estimate = next;
        last_err = err;
        if level >= 2 && (err <= tol * next.abs() || err <= floor) {
            return Ok(QuadResult { value: next, err_estimate: err.max(floor), n_evals: evals });
        }
    }
    Err(Error::Accuracy { estimate, err: last_err, context: "de_integrate".into() })
}

/// Finite-interval tanh-sinh nodes on `[a, b]`, precomputed once and reused.
#[derive(Debug, Clone)]
pub struct TanhSinhRule {
    pub a: f64,
    pub b: f64,
    /// `(x, weight)` pairs; nodes that round onto an endpoint are dropped.
    pub nodes: Vec<(f64, f64)>,
    pub level: u32,
}

const TS_UMAX: f64 = 3.6;

fn ts_node(u: f64) -> (f64, f64) {
    // complement 1 - tanh(pi/2 sinh u) and weight, for u >= 0
    let s = FRAC_PI_2 * u.sinh();
    let e = (-2.0 * s).exp();
    let comp = 2.0 * e / (1.0 + e);
    let ch = (1.0 + e) * 0.5;
    let w = FRAC_PI_2 * u.cosh() * e / (ch * ch);
    (comp, w)
}

impl TanhSinhRule {
    /// Rule with step `2^{-level}` on `[a, b]`.
    pub fn new(a: f64, b: f64, level: u32) -> TanhSinhRule {
        let h = 0.5f64.powi(level as i32);
        let half = 0.5 * (b - a);
        let mut nodes = Vec::new();
        let n = (TS_UMAX / h).ceil() as i64;
        for k in -n..=n {
            let u = k as f64 * h;
            let (comp, w) = ts_node(u.abs());
            let x = if u >= 0.0 { b - half * comp } else { a + half * comp };
            if x <= a || x >= b {
                continue;
            }
            nodes.push((x, w * half * h));
        }
        TanhSinhRule { a, b, nodes, level }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().map(|&(x, w)| w * f(x)).sum()
    }

    /// Nodes present at this level but not at `level - 1` (odd multiples of `h`).
    pub fn fresh_nodes(a: f64, b: f64, level: u32) -> Vec<(f64, f64)> {
        let h = 0.5f64.powi(level as i32);
        let half = 0.5 * (b - a);
        let n = (TS_UMAX / h).ceil() as i64;
        let mut nodes = Vec::new();
        for k in -n..=n {
            if level > 0 && k % 2 == 0 {
                continue;
            }
            let u = k as f64 * h;
            let (comp, w) = ts_node(u.abs());
            let x = if u >= 0.0 { b - half * comp } else { a + half * comp };
            if x <= a || x >= b {
                continue;
            }
            nodes.push((x, w * half));
        }
        nodes
    }
}

/// `int_a^b f` by tanh-sinh with level doubling; tolerates endpoint singularities.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(b > a) {
        return Err(Error::domain("tanh_sinh: need a < b"));
    }
    let mut raw = 0.0;
    let mut abs_raw = 0.0;
    let mut evals = 0;
    let mut prev = f64::NAN;
    let mut err = f64::INFINITY;
    for level in 0..=10u32 {
        for (x, w) in TanhSinhRule::fresh_nodes(a, b, level) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::domain(format!("tanh_sinh: integrand not finite at {x:e}")));
            }
            raw += w * v;
            abs_raw += (w * v).abs();
            evals += 1;
        }
        let h = 0.5f64.powi(level as i32);
        let est = raw * h;
        if level > 0 {
            err = (est - prev).abs();
            let floor = 64.0 * f64::EPSILON * abs_raw * h;
            if level >= 3 && (err <= tol * est.abs() || err <= floor) {
                return Ok(QuadResult { value: est, err_estimate: err.max(floor), n_evals: evals });
            }
        }
        prev = est;
    }
    Err(Error::Accuracy { estimate: prev, err, context: "tanh_sinh".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_algebraic() {
        let r = de_integrate(|t| (-t).exp(), 1e-14).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let opts = DeOptions { decay: Decay::Algebraic, ..Default::default() };
        let r = de_integrate_with(|t| 1.0 / (1.0 + t * t), 1e-13, opts).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let r = tanh_sinh(|x| -x.ln(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = tanh_sinh(|x| 1.0 / (1.0 - x * x).sqrt(), -1.0, 1.0, 1e-10).unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-7);
        let rule = TanhSinhRule::new(0.0, 2.0, 6);
        assert!((rule.integrate(|x| x * x) - 8.0 / 3.0).abs() < 1e-14);
    }
}
