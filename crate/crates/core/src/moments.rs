//! Damped Bessel moments `int_0^inf [I0 or K0](xt) I0(t)^a K0(t)^b t^k dt`, the
//! Maclaurin coefficients `r_{2j+1,k}` built from them, and the numeric checks
//! on the five-step constants.

use crate::error::{Error, Result};
use crate::quad::{de_integrate_with, levin_sum, oscillatory_integrate, Decay, DeOptions, OscillatorySpec, Partition, QuadResult};
use crate::report::{guarded, CheckRecord};
use crate::specfun::bessel::{i0_scaled_unchecked, j1_unchecked, k0_scaled_unchecked};
use crate::specfun::gamma::{gamma, ln_gamma};
use crate::wick::feynman_coefficients_f64;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// The optional outer factor of a moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterKind {
    None,
    I0,
    K0,
}

/// `int_0^inf outer(xt) I0(t)^a K0(t)^b t^k dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSpec {
    pub x: f64,
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub outer: OuterKind,
}

impl MomentSpec {
    pub fn plain(a: u32, b: u32, k: u32) -> Self {
        MomentSpec { x: 0.0, a, b, k, outer: OuterKind::None }
    }

    pub fn with_i0(x: f64, a: u32, b: u32, k: u32) -> Self {
        MomentSpec { x, a, b, k, outer: OuterKind::I0 }
    }

    pub fn with_k0(x: f64, a: u32, b: u32, k: u32) -> Self {
        MomentSpec { x, a, b, k, outer: OuterKind::K0 }
    }

    /// Exponential rate of decay of the integrand, and the power of `t`
    /// multiplying the exponential at large `t`.
    fn decay(&self) -> (f64, f64) {
        let (shift, outer_count) = match self.outer {
            OuterKind::None => (0.0, 0.0),
            OuterKind::I0 if self.x == 0.0 => (0.0, 0.0),
            OuterKind::I0 => (self.x, 1.0),
            OuterKind::K0 => (-self.x, 1.0),
        };
        let rate = self.b as f64 - self.a as f64 - shift;
        let power = self.k as f64 - 0.5 * (self.a as f64 + self.b as f64 + outer_count);
        (rate, power)
    }

    fn validate(&self) -> Result<()> {
        if !self.x.is_finite() || self.x < 0.0 {
            return Err(Error::domain(format!("moment: outer argument x = {} must be >= 0", self.x)));
        }
        if self.outer == OuterKind::K0 && self.x <= 0.0 {
            return Err(Error::domain("moment: an outer K0(xt) factor requires x > 0"));
        }
        let (rate, power) = self.decay();
        if rate < 0.0 || (rate == 0.0 && power >= -1.0) {
            let lhs = match self.outer {
                OuterKind::I0 if self.x > 0.0 => format!("x + a = {}", self.x + self.a as f64),
                OuterKind::K0 => format!("a - x = {}", self.a as f64 - self.x),
                _ => format!("a = {}", self.a),
            };
            return Err(Error::domain(format!(
                "moment diverges: need {lhs} < b = {} (or equality with k - (a+b+outer)/2 < -1)",
                self.b
            )));
        }
        Ok(())
    }
}

/// `int outer(xt) I0^a K0^b t^k dt`, evaluated in jointly scaled form.
pub fn bessel_moment(spec: &MomentSpec, tol: f64) -> Result<QuadResult> {
    moment_normalized(spec, 0.0, tol)
}

/// `exp(-log_norm) * bessel_moment(spec)`, with the normalisation applied inside
/// the exponent so that large `k` cannot overflow.
pub fn moment_normalized(spec: &MomentSpec, log_norm: f64, tol: f64) -> Result<QuadResult> {
    spec.validate()?;
    let (rate, power) = spec.decay();
    let (a, b, k, x) = (spec.a as i32, spec.b as i32, spec.k as f64, spec.x);
    let outer = spec.outer;
    let f = move |t: f64| -> f64 {
        let mut v = i0_scaled_unchecked(t).powi(a) * k0_scaled_unchecked(t).powi(b);
        match outer {
            OuterKind::None => {}
            OuterKind::I0 => v *= i0_scaled_unchecked(x * t),
            OuterKind::K0 => v *= k0_scaled_unchecked(x * t),
        }
        if v == 0.0 {
            return 0.0;
        }
        v * (k * t.ln() - rate * t - log_norm).exp()
    };
    let algebraic = rate == 0.0;
    let scale = if algebraic {
        1.0
    } else {
        ((power + 0.5).max(0.0) / rate).max(1.0)
    };
    let opts = DeOptions {
        scale,
        decay: if algebraic { Decay::Algebraic } else { Decay::Exponential },
        max_level: 9,
    };
    de_integrate_with(f, tol, opts)
}

/// Signed contributions `r^{(m)}_{2j+1,k}` of one moment family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentPart {
    pub m: u32,
    pub q: f64,
    pub values: Vec<f64>,
    pub errs: Vec<f64>,
}

/// Maclaurin coefficients of `p_{2j+1}(x) = sum_k r_{2j+1,k} x^{2k+1}` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaclaurinTable {
    pub j: u32,
    pub coeffs: Vec<f64>,
    pub errs: Vec<f64>,
    pub per_m_parts: Vec<MomentPart>,
    /// Coefficients whose magnitude fell below 1e-300.
    pub underflow: Vec<bool>,
}

/// `r_{2j+1,k}` for `k = 0..=k_max` from the moment representation.
pub fn maclaurin_table(j: u32, k_max: u32, tol: f64) -> Result<MaclaurinTable> {
    let qs = feynman_coefficients_f64(j)?;
    let jobs: Vec<(usize, u32)> =
        (0..qs.len()).flat_map(|i| (0..=k_max).map(move |k| (i, k))).collect();
    let results: Vec<Result<QuadResult>> = jobs
        .par_iter()
        .map(|&(i, k)| {
            let (m, q) = qs[i];
            let spec = MomentSpec::plain(2 * m + 1, 2 * (j - m), 2 * k + 1);
            let log_norm = k as f64 * 4f64.ln()
                + 2.0 * ln_gamma(k as f64 + 1.0)
                + 2.0 * (j - m) as f64 * PI.ln();
            moment_normalized(&spec, log_norm, tol).map(|r| r.scaled(q))
        })
        .collect();
    let n = (k_max + 1) as usize;
    let mut parts: Vec<MomentPart> = qs
        .iter()
        .map(|&(m, q)| MomentPart { m, q, values: vec![0.0; n], errs: vec![0.0; n] })
        .collect();
    for (&(i, k), r) in jobs.iter().zip(results) {
        let r = r?;
        parts[i].values[k as usize] = r.value;
        parts[i].errs[k as usize] = r.err_estimate;
    }
    let coeffs: Vec<f64> = (0..n).map(|k| parts.iter().map(|p| p.values[k]).sum()).collect();
    let errs: Vec<f64> = (0..n).map(|k| parts.iter().map(|p| p.errs[k]).sum()).collect();
    let underflow = coeffs.iter().map(|c| c.abs() < 1e-300).collect();
    Ok(MaclaurinTable { j, coeffs, errs, per_m_parts: parts, underflow })
}

impl MaclaurinTable {
    /// Plain partial sum `sum_k r_k x^{2k+1}`.
    pub fn partial_sum(&self, x: f64) -> f64 {
        self.coeffs.iter().enumerate().map(|(k, r)| r * x.powi(2 * k as i32 + 1)).sum()
    }

    /// Series value at `x` with a truncation estimate.
    pub fn sum_at(&self, x: f64) -> (f64, f64) {
        let (v, e) = self.weighted_sum(0, |k| Complex64::new(x.powi(2 * k as i32 + 1), 0.0));
        (v.re, e)
    }

    /// `sum_{k >= from} r_k w(k)` with a truncation estimate. Each constant-sign
    /// moment family is summed separately and accelerated with Levin-u.
    pub fn weighted_sum<F: Fn(usize) -> Complex64>(&self, from: usize, w: F) -> (Complex64, f64) {
        let mut total = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for part in &self.per_m_parts {
            let terms: Vec<Complex64> =
                part.values.iter().enumerate().skip(from).map(|(k, r)| w(k) * r).collect();
            let plain: Complex64 = terms.iter().sum();
            let last = terms.last().map(|t| t.norm()).unwrap_or(0.0);
            if last <= 1e-17 * plain.norm() || terms.len() < 4 {
                total += plain;
                err += last;
            } else {
                let (v, e) = levin_sum(&terms);
                total += v;
                err += e;
            }
        }
        (total, err)
    }
}

/// The Gamma-product constants of the five-step walk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaConstants {
    /// `C = Gamma(1/15)Gamma(2/15)Gamma(4/15)Gamma(8/15) / (240 sqrt5 pi^2)`.
    pub c: f64,
    /// `r_{5,0} = sqrt5/(40 pi^4) Gamma(1/15)Gamma(2/15)Gamma(4/15)Gamma(8/15)`.
    pub r50_closed: f64,
}

pub fn gamma_product_constants() -> GammaConstants {
    let g = gamma(1.0 / 15.0) * gamma(2.0 / 15.0) * gamma(4.0 / 15.0) * gamma(8.0 / 15.0);
    let s5 = 5f64.sqrt();
    GammaConstants {
        c: g / (240.0 * s5 * PI * PI),
        r50_closed: s5 / (40.0 * PI.powi(4)) * g,
    }
}

/// `int_0^inf J1(t)^5 t^{-2} dt` by zero-partition quadrature.
pub fn j1_fifth_moment(tol: f64) -> Result<QuadResult> {
    let f = |t: f64| {
        if t == 0.0 {
            0.0
        } else {
            j1_unchecked(t).powi(5) / (t * t)
        }
    };
    let spec = OscillatorySpec {
        integrand: &f,
        envelope_decay: 4.5,
        partition: Partition::J1Zeros { scale: 1.0 },
        subpanels: 4,
    };
    oscillatory_integrate(&spec, tol)
}

/// `int_0^inf J0(t)^5 t dt = r_{5,0}` by zero-partition quadrature.
pub fn j0_fifth_moment(tol: f64) -> Result<QuadResult> {
    let f = |t: f64| crate::specfun::bessel::j0_unchecked(t).powi(5) * t;
    let spec = OscillatorySpec {
        integrand: &f,
        envelope_decay: 1.5,
        partition: Partition::J0Zeros { scale: 1.0 },
        subpanels: 4,
    };
    oscillatory_integrate(&spec, tol)
}

/// `p_5(1) = (30/pi^4) int I0^2 K0^4 t dt`.
pub fn p5_at_one(tol: f64) -> Result<QuadResult> {
    Ok(bessel_moment(&MomentSpec::plain(2, 4, 1), tol)?.scaled(30.0 / PI.powi(4)))
}

/// Published ten-digit values used as targets.
pub mod published {
    pub const R50: f64 = 0.3299338011;
    pub const R51: f64 = 0.006616730259;
    pub const R52: f64 = 0.0002623323540;
    pub const FETTIS_GAP: f64 = 0.006894160706;
}

/// Residuals of the five-step identities: the `r_{5,1}` relation, the `J1`
/// fifth-moment identity, the `C`-expressions for `r_{5,1}` and `r_{5,2}`, the
/// Fettis gap and the three routes to `r_{5,0}`.
pub fn borwein_checks(tol: f64) -> Vec<CheckRecord> {
    let qtol = tol.min(1e-12);
    let mut out = Vec::new();
    let table = maclaurin_table(2, 2, qtol);
    let gc = gamma_product_constants();
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            out.push(CheckRecord::failed("r5-table", "r_{5,k} from moments", &e, tol));
            return out;
        }
    };
    let (r50, r51, r52) = (table.coeffs[0], table.coeffs[1], table.coeffs[2]);

    out.push(CheckRecord::absolute(
        "r51-relation",
        "r_{5,1} = (13/225) r_{5,0} - 2/(5 pi^4 r_{5,0})",
        r51,
        13.0 / 225.0 * r50 - 2.0 / (5.0 * pi4 * r50),
        1e-9,
    ));
    out.push(guarded("j1-fifth-moment", "8 int J1^5 t^-2 dt = r_{5,0}/6 + 105/(16 pi^4 r_{5,0})", 1e-7, || {
        let v = j1_fifth_moment(qtol.max(1e-11))?;
        Ok(CheckRecord::absolute(
            "j1-fifth-moment",
            "8 int J1^5 t^-2 dt = r_{5,0}/6 + 105/(16 pi^4 r_{5,0})",
            8.0 * v.value,
            r50 / 6.0 + 105.0 / (16.0 * pi4 * r50),
            1e-7,
        ))
    }));
    let c = gc.c;
    out.push(CheckRecord::absolute(
        "r51-bologna",
        "r_{5,1} = 2/(15 pi^2) (13C - 1/(10C))",
        r51,
        2.0 / (15.0 * pi2) * (13.0 * c - 1.0 / (10.0 * c)),
        1e-10,
    ));
    out.push(CheckRecord::absolute(
        "r52-bologna",
        "r_{5,2} = 2/(225 pi^2) (43C - 19/(40C))",
        r52,
        2.0 / (225.0 * pi2) * (43.0 * c - 19.0 / (40.0 * c)),
        1e-11,
    ));
    out.push(CheckRecord::absolute("r50-bologna", "r_{5,0} = 30C/pi^2", r50, 30.0 * c / pi2, 1e-10));
    out.push(CheckRecord::absolute("r50-published", "r_{5,0} = 0.3299338011", r50, published::R50, 1e-9));
    out.push(CheckRecord::absolute("r51-published", "r_{5,1} = 0.006616730259", r51, published::R51, 1e-9));
    out.push(CheckRecord::absolute("r52-published", "r_{5,2} = 0.0002623323540", r52, published::R52, 1e-9));
    out.push(CheckRecord::relative(
        "r50-gamma-vs-moment",
        "sqrt5/(40 pi^4) Gamma(1/15)Gamma(2/15)Gamma(4/15)Gamma(8/15) = 30 s_{5,1}/pi^4",
        gc.r50_closed,
        r50,
        1e-8,
    ));
    out.push(guarded("r50-oscillatory", "int J0^5 t dt = 30 s_{5,1}/pi^4", 1e-8, || {
        let v = j0_fifth_moment(qtol.max(1e-11))?;
        Ok(CheckRecord::relative("r50-oscillatory", "int J0^5 t dt = 30 s_{5,1}/pi^4", v.value, r50, 1e-8))
    }));
    out.push(guarded("r50-oscillatory-gamma", "int J0^5 t dt = Gamma-product closed form", 1e-8, || {
        let v = j0_fifth_moment(qtol.max(1e-11))?;
        Ok(CheckRecord::relative(
            "r50-oscillatory-gamma",
            "int J0^5 t dt = Gamma-product closed form",
            v.value,
            gc.r50_closed,
            1e-8,
        ))
    }));
    match p5_at_one(qtol) {
        Ok(p51) => {
            out.push(CheckRecord::absolute(
                "fettis-gap",
                "p_5(1) - p_5'(0+) = 0.006894160706",
                p51.value - r50,
                published::FETTIS_GAP,
                1e-8,
            ));
            out.push(CheckRecord::greater("fettis-bound", "p_5(1) - p_5'(0+) > r_{5,1}", p51.value - r50, r51));
            out.push(CheckRecord::greater("fettis-order", "p_5(1) > p_5'(0+)", p51.value, r50));
        }
        Err(e) => out.push(CheckRecord::failed("fettis-gap", "p_5(1) - p_5'(0+)", &e, 1e-8)),
    }
    out
}
