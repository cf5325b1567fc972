//! Eta-product cusp forms and their critical L-values.
//!
//! `L(f, s) = (2 pi)^s / Gamma(s) * int_0^inf f(iy) y^{s-1} dy`, with the integral
//! split at `y0` and the part below `y0` folded onto `[1/(l y0), inf)` by the
//! Fricke relation `f(i/(l y)) = eps (sqrt(l) y)^w f(iy)`.

use crate::error::{Error, Result};
use crate::moments::{bessel_moment, maclaurin_table, published, MomentSpec};
use crate::report::{guarded, CheckRecord};
use crate::specfun::gamma::factorial;
use crate::walks::derivative_at_zero;
use serde::Serialize;
use std::f64::consts::PI;
use std::str::FromStr;

/// Default number of Fourier coefficients.
pub const DEFAULT_TERMS: usize = 400;

/// `prod_n (1 - q^{m n})` to `O(q^len)`, from the pentagonal number theorem.
/// The full `eta(m z)` carries the extra factor `q^{m/24}`.
pub fn eta_expansion(m: u32, len: usize) -> Vec<i128> {
    let mut c = vec![0i128; len];
    if len == 0 {
        return c;
    }
    let m = m as i64;
    for k in 0i64.. {
        let mut any = false;
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            let e = (m * g) as usize;
            if e < len {
                any = true;
                c[e] = if k % 2 == 0 { 1 } else { -1 };
            }
            if k == 0 {
                break;
            }
        }
        if !any {
            break;
        }
    }
    c
}

fn overflow() -> Error {
    Error::Overflow("q-expansion coefficient exceeds 128 bits".into())
}

fn series_mul(a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            let p = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(p).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

/// `a / b` for `b[0] = 1`.
fn series_div(a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    debug_assert_eq!(b[0], 1);
    let n = a.len();
    let mut out = vec![0i128; n];
    for k in 0..n {
        let mut acc = a[k];
        for j in 1..=k {
            if b[j] != 0 && out[k - j] != 0 {
                acc = acc.checked_sub(b[j].checked_mul(out[k - j]).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
        }
        out[k] = acc;
    }
    Ok(out)
}

/// `prod_i eta(m_i z)^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaProduct {
    /// `(multiplier, exponent)`.
    pub factors: Vec<(u32, i32)>,
}

impl EtaProduct {
    pub fn new(factors: &[(u32, i32)]) -> Result<EtaProduct> {
        let p = EtaProduct { factors: factors.to_vec() };
        let s: i64 = p.factors.iter().map(|&(m, e)| m as i64 * e as i64).sum();
        if s % 24 != 0 || s <= 0 {
            return Err(Error::Structural(format!(
                "eta product {:?} has q-order {s}/24, not a positive integer",
                p.factors
            )));
        }
        Ok(p)
    }

    /// `(sum e_i) / 2`.
    pub fn weight(&self) -> f64 {
        self.factors.iter().map(|f| f.1 as f64).sum::<f64>() / 2.0
    }

    /// Leading power of `q`.
    pub fn q_order(&self) -> usize {
        (self.factors.iter().map(|&(m, e)| m as i64 * e as i64).sum::<i64>() / 24) as usize
    }

    /// Coefficients of `q^0 .. q^{len-1}`.
    pub fn expand(&self, len: usize) -> Result<Vec<i128>> {
        let mut acc = vec![0i128; len];
        let shift = self.q_order();
        if shift >= len {
            return Ok(acc);
        }
        let body = len - shift;
        let mut s = vec![0i128; body];
        s[0] = 1;
        // positive powers first keeps every intermediate a form of positive weight
        for &(m, e) in self.factors.iter().filter(|f| f.1 > 0) {
            let eta = eta_expansion(m, body);
            for _ in 0..e {
                s = series_mul(&s, &eta)?;
            }
        }
        for &(m, e) in self.factors.iter().filter(|f| f.1 < 0) {
            let eta = eta_expansion(m, body);
            for _ in 0..(-e) {
                s = series_div(&s, &eta)?;
            }
        }
        acc[shift..].copy_from_slice(&s);
        Ok(acc)
    }
}

/// The three forms of the walk problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormId {
    F3_15,
    F4_6,
    F6_6,
}

impl FormId {
    pub const ALL: [FormId; 3] = [FormId::F3_15, FormId::F4_6, FormId::F6_6];

    pub fn name(self) -> &'static str {
        match self {
            FormId::F3_15 => "f3_15",
            FormId::F4_6 => "f4_6",
            FormId::F6_6 => "f6_6",
        }
    }
}

impl FromStr for FormId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown form '{s}' (expected f3_15, f4_6 or f6_6)")))
    }
}

/// A sum of eta products with integer Fourier coefficients `a_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspForm {
    pub name: String,
    pub weight: u32,
    pub level: u32,
    pub terms: Vec<EtaProduct>,
    /// `coeffs[n] = a_n`; `coeffs[0] = 0`.
    pub coeffs: Vec<i128>,
}

impl CuspForm {
    pub fn from_terms(name: &str, level: u32, terms: Vec<EtaProduct>, n_terms: usize) -> Result<CuspForm> {
        let w = terms.first().map(|t| t.weight()).unwrap_or(0.0);
        if terms.iter().any(|t| t.weight() != w) || w.fract() != 0.0 || w < 1.0 {
            return Err(Error::Structural(format!("{name}: summands must share one integral weight")));
        }
        let mut coeffs = vec![0i128; n_terms + 1];
        for t in &terms {
            for (c, v) in coeffs.iter_mut().zip(t.expand(n_terms + 1)?) {
                *c = c.checked_add(v).ok_or_else(overflow)?;
            }
        }
        if coeffs[0] != 0 {
            return Err(Error::Structural(format!("{name}: constant term {} is not zero", coeffs[0])));
        }
        Ok(CuspForm { name: name.into(), weight: w as u32, level, terms, coeffs })
    }

    pub fn standard(id: FormId, n_terms: usize) -> Result<CuspForm> {
        let e = |f: &[(u32, i32)]| EtaProduct::new(f);
        match id {
            FormId::F3_15 => CuspForm::from_terms(
                id.name(),
                15,
                vec![e(&[(3, 3), (5, 3)])?, e(&[(1, 3), (15, 3)])?],
                n_terms,
            ),
            FormId::F4_6 => CuspForm::from_terms(id.name(), 6, vec![e(&[(1, 2), (2, 2), (3, 2), (6, 2)])?], n_terms),
            FormId::F6_6 => CuspForm::from_terms(
                id.name(),
                6,
                vec![e(&[(2, 9), (3, 9), (1, -3), (6, -3)])?, e(&[(1, 9), (6, 9), (2, -3), (3, -3)])?],
                n_terms,
            ),
        }
    }

    pub fn n_terms(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f(iy) = sum a_n e^{-2 pi n y}`; only meaningful where the truncated tail is negligible.
    pub fn eval_imag(&self, y: f64) -> f64 {
        let q = (-2.0 * PI * y).exp();
        let mut qn = 1.0;
        let mut s = 0.0;
        for &a in &self.coeffs[1..] {
            qn *= q;
            if qn == 0.0 {
                break;
            }
            s += a as f64 * qn;
        }
        s
    }

    /// Right side of the Fricke relation with unit eigenvalue, `(sqrt(l) y)^w f(iy)`.
    fn fricke_image(&self, y: f64) -> f64 {
        ((self.level as f64).sqrt() * y).powi(self.weight as i32) * self.eval_imag(y)
    }

    /// Detect `eps` at `0.9/sqrt(l)` and validate it at `{0.8, 0.95, 1.05, 1.2}/sqrt(l)`.
    /// Returns `(eps, worst residual)`.
    pub fn fricke_eigenvalue(&self) -> Result<(i32, f64)> {
        let r = 1.0 / (self.level as f64).sqrt();
        let l = self.level as f64;
        let probe = 0.9 * r;
        let lhs = self.eval_imag(1.0 / (l * probe));
        let rhs = self.fricke_image(probe);
        let eps = if lhs * rhs >= 0.0 { 1 } else { -1 };
        let mut worst = 0f64;
        for t in [0.8, 0.9, 0.95, 1.05, 1.2] {
            let y = t * r;
            let a = self.eval_imag(1.0 / (l * y));
            let b = eps as f64 * self.fricke_image(y);
            worst = worst.max((a - b).abs());
        }
        if worst > 1e-8 {
            return Err(Error::Structural(format!(
                "{}: Fricke relation fails for both signs (residual {worst:e})",
                self.name
            )));
        }
        Ok((eps, worst))
    }
}

/// `Gamma(s, x)` for integer `s >= 1`: `(s-1)! e^{-x} sum_{k<s} x^k/k!`.
pub fn upper_gamma_int(s: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..s {
        term *= x / k as f64;
        sum += term;
    }
    factorial(s - 1) * (-x).exp() * sum
}

/// Critical value `L(f, s)` with the data used to obtain it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LValue {
    pub form: String,
    pub s: u32,
    pub value: f64,
    pub eps_detected: i32,
    #[serde(rename = "N_used")]
    pub n_used: usize,
    pub err: f64,
}

/// `sum_{n} a_n Gamma(s, 2 pi n y0) / (2 pi n)^s` and a bound on the part beyond the table.
fn incomplete_sum(form: &CuspForm, s: u32, y0: f64) -> (f64, f64) {
    let mut total = 0.0;
    for (n, &a) in form.coeffs.iter().enumerate().skip(1) {
        if a == 0 {
            continue;
        }
        let x = 2.0 * PI * n as f64;
        total += a as f64 * upper_gamma_int(s, x * y0) / x.powi(s as i32);
    }
    // |a_n| <= n^w bounds every coefficient of these forms by a wide margin
    let n = form.n_terms() as f64 + 1.0;
    let x = 2.0 * PI * n;
    let tail = n.powi(form.weight as i32) * upper_gamma_int(s, x * y0) / x.powi(s as i32)
        / (1.0 - (-2.0 * PI * y0).exp());
    (total, tail)
}

/// `L(f, s)` with the split at `y0 = split / sqrt(l)`.
pub fn l_value_split(form: &CuspForm, s: u32, split: f64, tol: f64) -> Result<LValue> {
    if s < 1 || s >= form.weight {
        return Err(Error::domain(format!(
            "l_value: s = {s} is not critical for weight {}",
            form.weight
        )));
    }
    let (eps, _) = form.fricke_eigenvalue()?;
    let l = form.level as f64;
    let y0 = split / l.sqrt();
    let (upper, e1) = incomplete_sum(form, s, y0);
    let (lower, e2) = incomplete_sum(form, form.weight - s, 1.0 / (l * y0));
    let pref = eps as f64 * l.powf(form.weight as f64 / 2.0 - s as f64);
    let lambda = upper + pref * lower;
    let norm = (2.0 * PI).powi(s as i32) / factorial(s - 1);
    let value = norm * lambda;
    let err = norm * (e1 + pref.abs() * e2) + 8.0 * f64::EPSILON * value.abs();
    if err > tol * value.abs() {
        return Err(Error::Accuracy { estimate: value, err, context: format!("L({}, {s})", form.name) });
    }
    Ok(LValue { form: form.name.clone(), s, value, eps_detected: eps, n_used: form.n_terms(), err })
}

/// `L(f, s)` with the symmetric split `y0 = 1/sqrt(l)`.
pub fn l_value(form: &CuspForm, s: u32, tol: f64) -> Result<LValue> {
    l_value_split(form, s, 1.0, tol)
}

/// The identities between first derivatives at the origin, Bessel moments and
/// critical L-values, each as a residual record. Residuals are held to `tol`;
/// moments are computed at `quad_tol`.
pub fn modular_identity_report(tol: f64, quad_tol: f64) -> Vec<CheckRecord> {
    let qt = quad_tol;
    let lt = 1e-12;
    let mut out = Vec::new();
    let forms: Result<Vec<CuspForm>> = FormId::ALL.iter().map(|&f| CuspForm::standard(f, DEFAULT_TERMS)).collect();
    let forms = match forms {
        Ok(f) => f,
        Err(e) => {
            out.push(CheckRecord::failed("forms", "eta-product expansions", &e, tol));
            return out;
        }
    };
    let (f315, f46, f66) = (&forms[0], &forms[1], &forms[2]);
    let lv = |f: &CuspForm, s: u32| l_value(f, s, lt).map(|v| v.value);
    let pi = PI;

    for f in &forms {
        out.push(guarded(&format!("fricke-{}", f.name), "f(i/(l y)) = eps (sqrt(l) y)^w f(iy)", 1e-10, || {
            let (eps, worst) = f.fricke_eigenvalue()?;
            Ok(CheckRecord::absolute(
                &format!("fricke-{}", f.name),
                "f(i/(l y)) = eps (sqrt(l) y)^w f(iy)",
                worst,
                0.0,
                1e-10,
            )
            .with_note(format!("eps = {eps:+}")))
        }));
    }

    let p5d = || derivative_at_zero(5, qt).map(|r| r.value);
    out.push(guarded("p5'-L1", "p5'(0+) = 6/pi^2 L(f3_15, 1)", tol, || {
        Ok(CheckRecord::absolute("p5'-L1", "p5'(0+) = 6/pi^2 L(f3_15, 1)", 6.0 / (pi * pi) * lv(f315, 1)?, p5d()?, tol))
    }));
    out.push(guarded("p5'-L2", "p5'(0+) = 3 sqrt15/pi^3 L(f3_15, 2)", tol, || {
        let v = 3.0 * 15f64.sqrt() / pi.powi(3) * lv(f315, 2)?;
        Ok(CheckRecord::absolute("p5'-L2", "p5'(0+) = 3 sqrt15/pi^3 L(f3_15, 2)", v, p5d()?, tol))
    }));

    let p6 = || bessel_moment(&MomentSpec::plain(2, 4, 1), qt).map(|r| 30.0 / pi.powi(4) * r.value);
    out.push(guarded("p6'-direct", "p6'(0+) = int J0^6 t dt = p5(1)", tol, || {
        Ok(CheckRecord::absolute("p6'-direct", "p6'(0+) = int J0^6 t dt = p5(1)", derivative_at_zero(6, qt)?.value, p6()?, tol))
    }));
    out.push(guarded("p6'-L1", "p6'(0+) = 15/pi^2 L(f4_6, 1)", tol, || {
        Ok(CheckRecord::absolute("p6'-L1", "p6'(0+) = 15/pi^2 L(f4_6, 1)", 15.0 / (pi * pi) * lv(f46, 1)?, p6()?, tol))
    }));
    out.push(guarded("p6'-L3", "p6'(0+) = 45/pi^4 L(f4_6, 3)", tol, || {
        Ok(CheckRecord::absolute("p6'-L3", "p6'(0+) = 45/pi^4 L(f4_6, 3)", 45.0 / pi.powi(4) * lv(f46, 3)?, p6()?, tol))
    }));

    let m44 = || bessel_moment(&MomentSpec::plain(4, 4, 1), qt).map(|r| r.value);
    let m26 = || bessel_moment(&MomentSpec::plain(2, 6, 1), qt).map(|r| r.value);
    let p8 = || -> crate::Result<f64> { Ok(35.0 * (4.0 / pi.powi(6) * m26()? - 2.0 / pi.powi(4) * m44()?)) };
    out.push(guarded("p8'-p7(1)", "p8'(0+) by moments = p7(1) by Maclaurin series", 1e-8, || {
        let (v, _) = maclaurin_table(3, 80, 1e-14)?.sum_at(1.0);
        Ok(CheckRecord::absolute("p8'-p7(1)", "p8'(0+) by moments = p7(1) by Maclaurin series", v, p8()?, 1e-8))
    }));
    out.push(guarded("p8'-direct", "p8'(0+) = int J0^8 t dt", tol, || {
        Ok(CheckRecord::absolute("p8'-direct", "p8'(0+) = int J0^8 t dt", derivative_at_zero(8, qt)?.value, p8()?, tol))
    }));
    out.push(guarded("p8'-L1", "p8'(0+) = 35/(9 pi^2) L(f6_6, 1)", tol, || {
        Ok(CheckRecord::absolute("p8'-L1", "p8'(0+) = 35/(9 pi^2) L(f6_6, 1)", 35.0 / (9.0 * pi * pi) * lv(f66, 1)?, p8()?, tol))
    }));
    out.push(guarded("p8'-L3", "p8'(0+) = 20/pi^4 L(f6_6, 3)", tol, || {
        Ok(CheckRecord::absolute("p8'-L3", "p8'(0+) = 20/pi^4 L(f6_6, 3)", 20.0 / pi.powi(4) * lv(f66, 3)?, p8()?, tol))
    }));
    out.push(guarded("p8'-L5", "p8'(0+) = 210/pi^6 L(f6_6, 5)", tol, || {
        Ok(CheckRecord::absolute("p8'-L5", "p8'(0+) = 210/pi^6 L(f6_6, 5)", 210.0 / pi.powi(6) * lv(f66, 5)?, p8()?, tol))
    }));

    out.push(guarded("L-ratio-f4_6", "L(f4_6, 1)/L(f4_6, 3) = 3/pi^2", tol, || {
        Ok(CheckRecord::absolute("L-ratio-f4_6", "L(f4_6, 1)/L(f4_6, 3) = 3/pi^2", lv(f46, 1)? / lv(f46, 3)?, 3.0 / (pi * pi), tol))
    }));
    out.push(guarded("L-ratio-f6_6", "L(f6_6, 5)/L(f6_6, 3) = 2 pi^2/21", tol, || {
        Ok(CheckRecord::absolute("L-ratio-f6_6", "L(f6_6, 5)/L(f6_6, 3) = 2 pi^2/21", lv(f66, 5)? / lv(f66, 3)?, 2.0 * pi * pi / 21.0, tol))
    }));
    out.push(guarded("IKM-4-4", "int I0^4 K0^4 t dt = L(f6_6, 3)", tol, || {
        Ok(CheckRecord::absolute("IKM-4-4", "int I0^4 K0^4 t dt = L(f6_6, 3)", m44()?, lv(f66, 3)?, tol))
    }));
    out.push(guarded("IKM-2-6", "int I0^2 K0^6 t dt = 27/4 L(f6_6, 5)", tol, || {
        Ok(CheckRecord::absolute("IKM-2-6", "int I0^2 K0^6 t dt = 27/4 L(f6_6, 5)", m26()?, 6.75 * lv(f66, 5)?, tol))
    }));
    out.push(guarded("L2-f3_15-r50", "L(f3_15, 2) = pi^3 r50/(3 sqrt15), published r50", 1e-8, || {
        let target = pi.powi(3) * published::R50 / (3.0 * 15f64.sqrt());
        Ok(CheckRecord::absolute("L2-f3_15-r50", "L(f3_15, 2) = pi^3 r50/(3 sqrt15), published r50", lv(f315, 2)?, target, 1e-8))
    }));
    out
}
