//! Densities `p_n(x)` of the distance travelled by an `n`-step planar walk with
//! unit steps in uniformly random directions, by every available route, and a
//! Monte Carlo simulator for comparison.

mod simulate;

pub use simulate::{histogram_fd, ks_distance, simulate, BinRule, CdfTable, Histogram, WalkSample};

use crate::error::{Error, Result};
use crate::moments::{bessel_moment, maclaurin_table, MaclaurinTable, MomentSpec};
use crate::quad::{bessel_product_integral, BesselProduct, QuadResult};
use crate::wick::feynman_coefficients_f64;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

/// How a density value is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityRoute {
    /// `x int_0^inf J0(xt) J0(t)^n t dt`.
    Direct,
    /// Elementary or single-moment formulas for `n = 2, 3, 4`.
    ClosedForm,
    /// Damped-moment representation of odd `n` on `[0, 1]`.
    Feynman,
    /// Maclaurin series of odd `n` on `[0, 1]`.
    Series,
    /// `(2x/n) e^{-x^2/n}`, the large-`n` approximation.
    Rayleigh,
}

impl FromStr for DensityRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(DensityRoute::Direct),
            "closed_form" | "closed-form" => Ok(DensityRoute::ClosedForm),
            "feynman" => Ok(DensityRoute::Feynman),
            "series" => Ok(DensityRoute::Series),
            "rayleigh" => Ok(DensityRoute::Rayleigh),
            _ => Err(Error::domain(format!("unknown density route '{s}'"))),
        }
    }
}

/// Distance from `x = 1` inside which the direct route refuses `p_3`.
pub const P3_DIRECT_EXCLUSION: f64 = 1e-6;

fn exact(value: f64) -> QuadResult {
    QuadResult { value, err_estimate: 0.0, n_evals: 1 }
}

/// `p_n(x)` by the requested route.
pub fn density(n: u32, x: f64, route: DensityRoute, tol: f64) -> Result<QuadResult> {
    if n < 1 {
        return Err(Error::domain("density: n must be >= 1"));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("density: x = {x} must be finite and >= 0")));
    }
    if route == DensityRoute::Rayleigh {
        return Ok(exact(rayleigh_approx(n, x)));
    }
    if n < 2 {
        return Err(Error::domain("density: n must be >= 2 (p_1 is a point mass)"));
    }
    if x > n as f64 {
        return Err(Error::domain(format!("density: x = {x} outside the support [0, {n}]")));
    }
    match route {
        DensityRoute::Direct => {
            if n == 2 {
                return closed_form(2, x, tol);
            }
            if n == 3 && (x - 1.0).abs() < P3_DIRECT_EXCLUSION {
                return Err(Error::Pole { location: 1.0, residue: f64::NAN });
            }
            direct(n, x, tol)
        }
        DensityRoute::ClosedForm => closed_form(n, x, tol),
        DensityRoute::Feynman => {
            check_odd_unit(n, x, "feynman")?;
            feynman(n, x, tol)
        }
        DensityRoute::Series => {
            check_odd_unit(n, x, "series")?;
            series(n, x, tol)
        }
        DensityRoute::Rayleigh => unreachable!(),
    }
}

fn check_odd_unit(n: u32, x: f64, route: &str) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain(format!("{route} route requires odd n >= 3, got {n}")));
    }
    if x > 1.0 || (n == 3 && x >= 1.0) {
        return Err(Error::domain(format!(
            "{route} route requires 0 <= x <= 1 (x < 1 for n = 3), got {x}"
        )));
    }
    Ok(())
}

/// `x int J0(xt) J0(t)^n t dt` with no exclusion zone (`x = 1` for `n = 3` still diverges).
pub fn direct(n: u32, x: f64, tol: f64) -> Result<QuadResult> {
    if x == 0.0 || x >= n as f64 {
        return Ok(exact(0.0));
    }
    let prod = BesselProduct { factors: vec![(1.0, n), (x, 1)], t_power: 1 };
    match bessel_product_integral(&prod, tol) {
        Ok(r) => Ok(r.scaled(x)),
        Err(Error::Accuracy { estimate, err, context }) => {
            Err(Error::Accuracy { estimate: estimate * x, err: err * x, context })
        }
        Err(e) => Err(e),
    }
}

/// `p_n'(0+) = int_0^inf J0(t)^n t dt` for `n >= 5`.
pub fn derivative_at_zero(n: u32, tol: f64) -> Result<QuadResult> {
    if n < 5 {
        return Err(Error::domain("p_n'(0+) is finite only for n >= 5"));
    }
    bessel_product_integral(&BesselProduct { factors: vec![(1.0, n)], t_power: 1 }, tol)
}

fn closed_form(n: u32, x: f64, tol: f64) -> Result<QuadResult> {
    match n {
        2 => {
            if x == 2.0 {
                return Err(Error::Pole { location: 2.0, residue: f64::NAN });
            }
            if x > 2.0 {
                return Ok(exact(0.0));
            }
            Ok(exact(2.0 / (PI * (4.0 - x * x).sqrt())))
        }
        3 => {
            if (x - 1.0).abs() < P3_DIRECT_EXCLUSION {
                return Err(Error::Pole { location: 1.0, residue: f64::NAN });
            }
            if x > 1.0 {
                return Err(Error::domain("closed form of p_3 is available for 0 <= x < 1"));
            }
            feynman(3, x, tol)
        }
        4 => {
            if x == 0.0 {
                return Ok(exact(0.0));
            }
            if x >= 2.0 {
                return Err(Error::domain("closed form of p_4 is available for 0 < x < 2"));
            }
            p4_moment_form(x, tol)
        }
        _ => Err(Error::domain(format!("closed_form route requires n in {{2, 3, 4}}, got {n}"))),
    }
}

/// `p_4(x) = (6/pi^4) x int I0(xt) K0^4 t dt + (24/pi^4) x int K0(xt) I0 K0^3 t dt`.
pub fn p4_moment_form(x: f64, tol: f64) -> Result<QuadResult> {
    let a = bessel_moment(&MomentSpec::with_i0(x, 0, 4, 1), tol)?;
    let b = bessel_moment(&MomentSpec::with_k0(x, 1, 3, 1), tol)?;
    let pi4 = PI.powi(4);
    Ok(QuadResult {
        value: x * (6.0 * a.value + 24.0 * b.value) / pi4,
        err_estimate: x * (6.0 * a.err_estimate + 24.0 * b.err_estimate) / pi4,
        n_evals: a.n_evals + b.n_evals,
    })
}

/// `sum_m q_m / pi^{2(j-m)} x int I0(xt) I0^{2m+1} K0^{2(j-m)} t dt` for odd `n = 2j+1`.
///
/// Equals `p_n(x)` on `[0, 1]`; beyond 1 it continues the Maclaurin series
/// for as long as the moments converge.
pub fn feynman(n: u32, x: f64, tol: f64) -> Result<QuadResult> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain("feynman form requires odd n >= 3"));
    }
    let j = (n - 1) / 2;
    let mut out = QuadResult { value: 0.0, err_estimate: 0.0, n_evals: 0 };
    for (m, q) in feynman_coefficients_f64(j)? {
        let spec = MomentSpec::with_i0(x, 2 * m + 1, 2 * (j - m), 1);
        let r = bessel_moment(&spec, tol)?;
        let w = q / PI.powi(2 * (j - m) as i32) * x;
        out.value += w * r.value;
        out.err_estimate += w.abs() * r.err_estimate;
        out.n_evals += r.n_evals;
    }
    Ok(out)
}

/// `a_k / 9^k` with `a_k = sum_j C(k,j)^2 C(2j,j)`, from the three-term recurrence.
pub fn p3_scaled_sums(count: usize) -> Vec<f64> {
    let mut u = Vec::with_capacity(count);
    if count == 0 {
        return u;
    }
    u.push(1.0);
    if count > 1 {
        u.push(3.0 / 9.0);
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        let next = ((10.0 * kf * kf + 10.0 * kf + 3.0) * u[k] - kf * kf * u[k - 1])
            / (9.0 * (kf + 1.0) * (kf + 1.0));
        u.push(next);
    }
    u
}

/// `r_{3,k} = 2/(pi sqrt3) a_k / 9^k`.
pub fn p3_coefficients(count: usize) -> Vec<f64> {
    let c = 2.0 / (PI * 3f64.sqrt());
    p3_scaled_sums(count).into_iter().map(|v| c * v).collect()
}

fn p3_series(x: f64, tol: f64) -> Result<QuadResult> {
    let c = 2.0 / (PI * 3f64.sqrt());
    let x2 = x * x;
    let (mut u_prev, mut u) = (0.0, 1.0);
    let mut pow = x;
    let mut sum = 0.0;
    for k in 0..10_000_000usize {
        let term = c * u * pow;
        sum += term;
        let bound = term * x2 / (1.0 - x2);
        if k > 2 && bound <= 0.1 * tol * sum.abs() {
            return Ok(QuadResult { value: sum, err_estimate: bound, n_evals: k + 1 });
        }
        let kf = k as f64;
        let next = if k == 0 {
            3.0 / 9.0
        } else {
            ((10.0 * kf * kf + 10.0 * kf + 3.0) * u - kf * kf * u_prev) / (9.0 * (kf + 1.0) * (kf + 1.0))
        };
        u_prev = u;
        u = next;
        pow *= x2;
    }
    Err(Error::Accuracy { estimate: sum, err: f64::NAN, context: "p3 series".into() })
}

/// Default number of Maclaurin coefficients used by the series route.
pub const SERIES_TERMS: u32 = 80;

fn cached_table(j: u32) -> Result<Arc<MaclaurinTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<MaclaurinTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("table cache").get(&j) {
        return Ok(t.clone());
    }
    let t = Arc::new(maclaurin_table(j, SERIES_TERMS, 1e-14)?);
    cache.lock().expect("table cache").insert(j, t.clone());
    Ok(t)
}

fn series(n: u32, x: f64, tol: f64) -> Result<QuadResult> {
    if n == 3 {
        return p3_series(x, tol);
    }
    let table = cached_table((n - 1) / 2)?;
    let (value, err) = table.sum_at(x);
    if err > tol * value.abs().max(1e-6) {
        return Err(Error::Accuracy { estimate: value, err, context: format!("series for p_{n} at {x}") });
    }
    Ok(QuadResult { value, err_estimate: err, n_evals: table.coeffs.len() })
}

/// `(2x/n) e^{-x^2/n}`.
pub fn rayleigh_approx(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    2.0 * x / nf * (-x * x / nf).exp()
}

/// `|p_4(x)| direct minus its two-moment form`, for `0 < x < 2`.
pub fn p4_identity_check(x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0 && x < 2.0) {
        return Err(Error::domain("p4_identity_check requires 0 < x < 2"));
    }
    let d = direct(4, x, tol)?;
    let m = p4_moment_form(x, tol)?;
    Ok((d.value - m.value).abs())
}

/// `p_4(x) / (-(3x/(2 pi^2)) ln x)`, which tends to 1 as `x -> 0+`.
pub fn p4_log_ratio(x: f64, tol: f64) -> Result<f64> {
    let d = density(4, x, DensityRoute::Direct, tol)?;
    Ok(d.value / (-(3.0 * x / (2.0 * PI * PI)) * x.ln()))
}

/// Below this, even-`n` densities (`n >= 6`) are replaced by their small-`x` expansion.
pub const EVEN_LINEAR_CUTOFF: f64 = 2e-3;
/// Below this, odd-`n` densities are replaced by their first two series terms.
pub const ODD_SERIES_CUTOFF: f64 = 1e-3;

fn cached_derivative(n: u32) -> Result<f64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("derivative cache").get(&n) {
        return Ok(*v);
    }
    let v = derivative_at_zero(n, 1e-12)?.value;
    cache.lock().expect("derivative cache").insert(n, v);
    Ok(v)
}

/// Route policy for bulk evaluation (tables, CDFs, moments).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoutePolicy {
    /// Cheapest accurate route per sub-interval: damped moments on `[0, 1]` for
    /// odd `n` and on `(0, 2)` for `n = 4`, the direct integral elsewhere.
    Best,
    /// The direct integral throughout, except for the linear behaviour at `x -> 0`.
    DirectOnly,
}

/// `p_n(x)` for bulk use: never refuses a point inside the support other than
/// the genuine singularity of `p_3` at 1.
pub fn density_for_table(n: u32, x: f64, policy: RoutePolicy, tol: f64) -> Result<f64> {
    if x <= 0.0 || x >= n as f64 {
        return Ok(0.0);
    }
    if n == 2 {
        return Ok(closed_form(2, x, tol)?.value);
    }
    let odd = n % 2 == 1;
    if odd && x < ODD_SERIES_CUTOFF {
        let t = cached_table((n - 1) / 2)?;
        return Ok(t.coeffs[0] * x + t.coeffs[1] * x.powi(3));
    }
    if !odd && n >= 6 && x < EVEN_LINEAR_CUTOFF {
        // J0(t)^6 has the non-oscillating mean 5/(2 pi^3 t^3), which adds
        // -(5/(2 pi^3)) x^2; for n >= 8 the next term is O(x^3 log x)
        let quad = if n == 6 { 5.0 / (2.0 * PI.powi(3)) * x * x } else { 0.0 };
        return Ok(cached_derivative(n)? * x - quad);
    }
    if policy == RoutePolicy::Best {
        if odd && x < 1.0 {
            return Ok(feynman(n, x, tol)?.value);
        }
        if n == 4 && x < 2.0 {
            return Ok(p4_moment_form(x, tol)?.value);
        }
    }
    if n == 4 && x < EVEN_LINEAR_CUTOFF {
        return Ok(p4_moment_form(x, tol)?.value);
    }
    // hugging an interior breakpoint the tail frequencies nearly coincide; the
    // density moves by O(eps log eps) there, far below table accuracy
    let b = (x.round() as u32 % 2 == n % 2).then(|| x.round()).filter(|&b| b > 0.0 && b <= n as f64);
    let x = match b {
        Some(b) if (x - b).abs() < BREAKPOINT_GUARD => {
            if n == 3 && b == 1.0 {
                // mirror the logarithmic singularity instead of flattening it
                let d = (x - 1.0).abs().max(f64::EPSILON);
                return Ok(feynman(3, 1.0 - d, tol)?.value);
            }
            b + BREAKPOINT_GUARD.copysign(x - b)
        }
        _ => x,
    };
    // tabulated values are integrated, so an absolute error bound suffices
    match direct(n, x, tol) {
        Ok(v) => Ok(v.value),
        Err(Error::Accuracy { estimate, err, .. }) if err <= tol => Ok(estimate),
        Err(e) => Err(e),
    }
}

/// Bulk evaluation moves points this close to an interior breakpoint out to this distance.
pub const BREAKPOINT_GUARD: f64 = 1e-9;

/// Points where `p_n` is not smooth: the integers of matching parity in `(0, n)`.
pub fn breakpoints(n: u32) -> Vec<f64> {
    let mut pts = vec![0.0];
    let start = if n % 2 == 1 { 1 } else { 2 };
    let mut b = start;
    while b < n {
        pts.push(b as f64);
        b += 2;
    }
    pts.push(n as f64);
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_sums_match_binomial_definition() {
        let u = p3_scaled_sums(12);
        for (k, uk) in u.iter().enumerate() {
            let mut a = 0f64;
            for j in 0..=k {
                a += binom(k, j).powi(2) * binom(2 * j, j);
            }
            assert!((uk / (a / 9f64.powi(k as i32)) - 1.0).abs() < 1e-13, "k = {k}");
        }
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn p2_closed_form_at_zero() {
        let v = density(2, 0.0, DensityRoute::ClosedForm, 1e-10).unwrap();
        assert!((v.value - 1.0 / PI).abs() < 1e-15);
    }
}
