//! The verification battery: every identity the library can check about itself,
//! grouped, each producing residual records. Failures are collected, never fatal.

use crate::error::{Error, Result};
use crate::lseries::modular_identity_report;
use crate::moments::{borwein_checks, maclaurin_table};
use crate::ramble::{
    ramble_continued, ramble_direct, residue_estimate, sum_rule_check, DensityTable, TABLE_LEVEL,
};
use crate::report::{guarded, CheckRecord, Status};
use crate::specfun::bessel::{j0_unchecked, j1_unchecked, y0_unchecked, y1_unchecked};
use crate::walks::{
    density, direct, ks_distance, simulate, CdfTable, feynman, p3_coefficients, p4_identity_check, p4_log_ratio, DensityRoute, RoutePolicy,
};
use crate::wick::{basis_member, feynman_coefficients, hankel_power_sum, wick_decompose, RationalPolyJY};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use std::f64::consts::PI;

/// Group names in the order they run.
pub const GROUPS: [&str; 10] = [
    "borwein",
    "wick",
    "routes",
    "signs",
    "theorem41",
    "p4",
    "ramble",
    "sumrule",
    "montecarlo",
    "properties",
];

/// Seed of the Monte Carlo checks.
pub const MC_SEED: u64 = 42;
pub const MC_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub records: Vec<CheckRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub tol: f64,
    pub groups: Vec<GroupReport>,
}

impl VerifyReport {
    pub fn records(&self) -> impl Iterator<Item = (&str, &CheckRecord)> {
        self.groups.iter().flat_map(|g| g.records.iter().map(move |r| (g.group.as_str(), r)))
    }

    pub fn passed(&self) -> bool {
        self.records().all(|(_, r)| r.passed())
    }

    /// True when some record failed only for lack of accuracy.
    pub fn accuracy_only(&self) -> bool {
        let mut bad = self.records().filter(|(_, r)| !r.passed()).peekable();
        bad.peek().is_some() && bad.all(|(_, r)| r.status == Status::AccuracyError)
    }
}

/// Quadrature tolerance for a check held to `check_tol`.
fn qtol(tol: f64, check_tol: f64) -> f64 {
    tol.min(check_tol / 10.0)
}

/// Run one group at global tolerance `tol`.
pub fn run_group(group: &str, tol: f64) -> Result<Vec<CheckRecord>> {
    Ok(match group {
        "borwein" => borwein_checks(qtol(tol, 1e-8)),
        "wick" => wick_group(tol),
        "routes" => routes_group(tol),
        "signs" => signs_group(tol),
        "theorem41" => modular_identity_report(1e-7, qtol(tol, 1e-9)),
        "p4" => p4_group(tol),
        "ramble" => ramble_group(tol),
        "sumrule" => sumrule_group(tol),
        "montecarlo" => montecarlo_group(tol),
        "properties" => properties_group(tol),
        other => {
            return Err(Error::domain(format!("unknown verify group '{other}'; expected one of {GROUPS:?}")))
        }
    })
}

/// Run the groups selected by `filter`: a group name runs that group, any other
/// pattern runs everything and keeps records whose id contains it.
pub fn verify(filter: Option<&str>, tol: f64) -> Result<VerifyReport> {
    if !(tol > 1e-14 && tol < 1e-3) {
        return Err(Error::domain(format!("tolerance {tol:e} outside (1e-14, 1e-3)")));
    }
    let names: Vec<&str> = match filter {
        Some(f) if GROUPS.contains(&f) => vec![f],
        _ => GROUPS.to_vec(),
    };
    let mut groups = Vec::new();
    for g in names {
        let mut records = run_group(g, tol)?;
        if let Some(f) = filter.filter(|f| !GROUPS.contains(f)) {
            records.retain(|r| r.id.contains(f));
        }
        if !records.is_empty() {
            groups.push(GroupReport { group: g.to_string(), records });
        }
    }
    if groups.is_empty() {
        return Err(Error::domain(format!("filter {filter:?} selects no checks")));
    }
    Ok(VerifyReport { schema: 1, tol, groups })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_record(id: &str, identity: &str, residual: &RationalPolyJY) -> CheckRecord {
    let terms = residual.terms().count() as f64;
    let rec = CheckRecord::absolute(id, identity, terms, 0.0, 0.0);
    if residual.is_zero() {
        rec
    } else {
        rec.with_note(format!("leftover {residual}"))
    }
}

fn wick_group(tol: f64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for j in 1..=12u32 {
        let id = format!("wick-exact-j{j}");
        let identity = format!("J^{} = sum_k lambda_k J^k c_{{{}-k}} exactly", 2 * j + 1, 2 * j + 1);
        out.push(guarded(&id, &identity, 0.0, || {
            let d = wick_decompose(j)?;
            let mut recon = RationalPolyJY::zero();
            for (k, l) in d.lambda.iter().enumerate() {
                recon = &recon + &basis_member(j, k as u32).scale(l);
            }
            Ok(exact_record(&id, &identity, &(&recon - &RationalPolyJY::j_power(2 * j + 1))))
        }));
    }
    let expected: [&[i64]; 4] = [&[6], &[30], &[140, -70], &[630, -840]];
    for (j, want) in (1u32..).zip(expected) {
        let id = format!("wick-q-j{j}");
        let identity = format!("q for j = {j} is {want:?}");
        out.push(guarded(&id, &identity, 0.0, || {
            let q: Vec<BigRational> = feynman_coefficients(j)?.into_iter().map(|(_, q)| q).collect();
            let want: Vec<BigRational> = want.iter().map(|&v| rat(v, 1)).collect();
            let mismatches = q.len().abs_diff(want.len()) + q.iter().zip(&want).filter(|(a, b)| a != b).count();
            let q_str: Vec<String> = q.iter().map(|v| v.to_string()).collect();
            Ok(CheckRecord::absolute(&id, &identity, mismatches as f64, 0.0, 0.0)
                .with_note(format!("computed {}", q_str.join(", "))))
        }));
    }

    // Y-free combinations of the five- and seven-step Wick-rotated integrands
    let j = RationalPolyJY::j_power;
    let c = hankel_power_sum;
    let s = |p: RationalPolyJY, a: i64, b: i64| p.scale(&rat(a, b));
    let five = &(&s(&j(1) * &c(4), -1, 2) + &s(c(5), 1, 10)) + &s(&j(2) * &c(3), 2, 3);
    out.push(exact_record(
        "y-cancel-5",
        "-J c4/2 + c5/10 + (2J^2/3) c3 = 8J^5/15",
        &(&five - &s(j(5), 8, 15)),
    ));
    let seven = &(&s(&j(1) * &c(6), 1, 2) - &s(c(7), 1, 14)) - &(&j(2) * &c(5));
    let seven_rhs = s(&j(5) * &(&j(2) - &RationalPolyJY::monomial(0, 2, rat(7, 1))), -8, 7);
    out.push(exact_record(
        "y-cancel-7a",
        "J c6/2 - c7/14 - J^2 c5 = -(8/7) J^5 (J^2 - 7Y^2)",
        &(&seven - &seven_rhs),
    ));
    let seven_b = &s(&j(3) * &c(4), 1, 2) - &s(&j(2) * &c(5), 1, 10);
    let seven_b_rhs = s(&j(5) * &(&j(2) - &RationalPolyJY::monomial(0, 2, rat(5, 1))), 4, 5);
    out.push(exact_record(
        "y-cancel-7b",
        "J^3 c4/2 - J^2 c5/10 = (4/5) J^5 (J^2 - 5Y^2)",
        &(&seven_b - &seven_b_rhs),
    ));

    let qt = qtol(tol, 1e-7);
    for jj in 1..=3u32 {
        let n = 2 * jj + 1;
        for x in [0.25, 0.5, 0.9] {
            let id = format!("wick-numeric-n{n}-x{x}");
            let identity = format!("damped-moment form of p_{n}({x}) = oscillatory form");
            out.push(guarded(&id, &identity, 1e-7, || {
                let f = feynman(n, x, qt)?;
                let d = direct(n, x, qt)?;
                Ok(CheckRecord::absolute(&id, &identity, f.value, d.value, 1e-7))
            }));
        }
    }
    out
}

fn routes_group(tol: f64) -> Vec<CheckRecord> {
    let qt = qtol(tol, 1e-7);
    let mut out = Vec::new();
    for n in [3u32, 5, 7, 9] {
        let id = format!("routes-n{n}");
        let identity = format!("max over x in 0.05..0.95 of |direct - damped-moment| for p_{n}");
        out.push(guarded(&id, &identity, 1e-7, || {
            let mut worst: f64 = 0.0;
            let mut at = 0.0;
            for i in 1..=19 {
                let x = 0.05 * i as f64;
                let d = direct(n, x, qt)?.value;
                let f = feynman(n, x, qt)?.value;
                if (d - f).abs() > worst {
                    worst = (d - f).abs();
                    at = x;
                }
            }
            Ok(CheckRecord::absolute(&id, &identity, worst, 0.0, 1e-7).with_note(format!("worst at x = {at:.2}")))
        }));
    }
    out.push(guarded("routes-p3-series", "p_3(0.5): Maclaurin series = direct", 1e-7, || {
        let s = density(3, 0.5, DensityRoute::Series, qt)?.value;
        let d = direct(3, 0.5, qt)?.value;
        Ok(CheckRecord::absolute("routes-p3-series", "p_3(0.5): Maclaurin series = direct", s, d, 1e-7))
    }));
    out.push(guarded("routes-p5-one", "p_5(1): damped-moment form = direct", 1e-7, || {
        let f = feynman(5, 1.0, qt)?.value;
        let d = direct(5, 1.0, qt)?.value;
        Ok(CheckRecord::absolute("routes-p5-one", "p_5(1): damped-moment form = direct", f, d, 1e-7))
    }));
    out
}

fn signs_group(tol: f64) -> Vec<CheckRecord> {
    let qt = qtol(tol, 1e-9);
    let mut out = Vec::new();
    match maclaurin_table(2, 20, qt) {
        Ok(t) => {
            for (k, &r) in t.coeffs.iter().enumerate() {
                out.push(CheckRecord::greater(&format!("r5-positive-k{k}"), &format!("r_{{5,{k}}} > 0"), r, 0.0));
            }
            for k in 3..t.coeffs.len() - 1 {
                let ratio = t.coeffs[k + 1] / t.coeffs[k];
                out.push(CheckRecord::greater(
                    &format!("r5-ratio-k{k}"),
                    &format!("r_{{5,{}}}/r_{{5,{k}}} < 1/9 + 0.05", k + 1),
                    1.0 / 9.0 + 0.05,
                    ratio,
                ));
            }
        }
        Err(e) => out.push(CheckRecord::failed("r5-positive", "r_{5,k} > 0", &e, 0.0)),
    }
    match maclaurin_table(3, 1, qt) {
        Ok(t) => {
            out.push(CheckRecord::greater("r7-0-positive", "r_{7,0} > 0", t.coeffs[0], 0.0));
            out.push(CheckRecord::greater("r7-1-negative", "r_{7,1} < 0", 0.0, t.coeffs[1]));
        }
        Err(e) => out.push(CheckRecord::failed("r7-signs", "r_{7,0} > 0 > r_{7,1}", &e, 0.0)),
    }
    out
}

fn p4_group(tol: f64) -> Vec<CheckRecord> {
    let qt = qtol(tol, 1e-7);
    let mut out = Vec::new();
    for x in [0.5, 1.0, 1.5] {
        let id = format!("p4-identity-x{x}");
        let identity = format!("p_4({x}) direct = I0/K0 two-moment form");
        out.push(guarded(&id, &identity, 1e-7, || {
            Ok(CheckRecord::absolute(&id, &identity, p4_identity_check(x, qt)?, 0.0, 1e-7))
        }));
    }
    let x = 1e-4;
    let identity = "p_4(x) / (-(3x/(2 pi^2)) ln x) within 5% of 1 at x = 1e-4";
    out.push(guarded("p4-log-ratio", identity, 0.05, || {
        let r = p4_log_ratio(x, qt)?;
        Ok(CheckRecord::absolute("p4-log-ratio", identity, r, 1.0, 0.05)
            .with_note("the O(x) term is (9 ln2/(2 pi^2)) x, so the ratio is 1 + 3 ln2/(-ln x) + o(1)"))
    }));
    let identity = "p_4(x) / ((3x/(2 pi^2))(3 ln2 - ln x)) = 1 at x = 1e-4";
    out.push(guarded("p4-log-law", identity, 1e-6, || {
        let p = density(4, x, DensityRoute::Direct, qt)?.value;
        let law = 3.0 * x / (2.0 * PI * PI) * (3.0 * 2f64.ln() - x.ln());
        Ok(CheckRecord::relative("p4-log-law", identity, p, law, 1e-6))
    }));
    out
}

fn ramble_group(tol: f64) -> Vec<CheckRecord> {
    let qt = qtol(tol, 1e-7);
    let mut out = Vec::new();
    for n in 3..=8u32 {
        for (s, target) in [(0.0, 1.0), (2.0, n as f64)] {
            let id = format!("ramble-W{n}({s})");
            let identity = format!("W_{n}({s}) = {target}");
            out.push(guarded(&id, &identity, 1e-6, || {
                let v = ramble_direct(n, Complex64::new(s, 0.0), qt)?;
                Ok(CheckRecord::absolute(&id, &identity, v.re, target, 1e-6))
            }));
        }
    }
    for j in 1..=3u32 {
        let n = 2 * j + 1;
        let coeffs: Result<Vec<f64>> = if j == 1 {
            Ok(p3_coefficients(3))
        } else {
            maclaurin_table(j, 2, qtol(tol, 1e-9)).map(|t| t.coeffs)
        };
        for k in 0..3usize {
            let id = format!("residue-n{n}-k{k}");
            let identity = format!("Res W_{n}(s) at s = -{} equals r_{{{n},{k}}}", 2 * k + 2);
            out.push(guarded(&id, &identity, 1e-5, || {
                let want = coeffs.clone()?[k];
                let got = residue_estimate(j, k, 1e-4)?;
                Ok(CheckRecord::absolute(&id, &identity, got, want, 1e-5))
            }));
        }
    }
    out.push(guarded("ramble-W5(1)-continued", "W_5(1): moment of the density = continuation", 1e-7, || {
        let d = ramble_direct(5, Complex64::new(1.0, 0.0), qt)?;
        let c = ramble_continued(2, Complex64::new(-1.0, 0.0), qt.max(1e-12))?;
        Ok(CheckRecord::absolute("ramble-W5(1)-continued", "W_5(1): moment of the density = continuation", c.re, d.re, 1e-7))
    }));
    out
}

fn sumrule_group(tol: f64) -> Vec<CheckRecord> {
    let cases = [(1u32, 0.5), (1, 1.0), (1, 1.5), (2, 0.5)];
    cases
        .iter()
        .map(|&(j, nu)| {
            let id = format!("sumrule-j{j}-nu{nu}");
            let identity = format!("W_{}({nu}) = sum_m C({nu}/2, m)^2 W_{}({nu} - 2m)", 2 * j + 2, 2 * j + 1);
            guarded(&id, &identity, 1e-5, || {
                // an error budget for the whole right-hand side, not a quadrature tolerance
                let r = sum_rule_check(j, Complex64::new(nu, 0.0), 64, (tol * 1e3).min(1e-6))?;
                Ok(CheckRecord::absolute(&id, &identity, r.rhs.re, r.lhs.re, 1e-5)
                    .with_note(format!("{} terms, truncated: {}, tail {:.1e}", r.terms, r.truncated, r.tail_estimate)))
            })
        })
        .collect()
}

fn montecarlo_group(tol: f64) -> Vec<CheckRecord> {
    let qt = qtol(tol, 1e-6);
    (3..=8u32)
        .map(|n| {
            let id = format!("ks-n{n}");
            let identity = format!("KS distance of {MC_SAMPLES} simulated {n}-step walks to the integrated density");
            guarded(&id, &identity, 0.01, || {
                let sample = simulate(n, MC_SAMPLES, MC_SEED)?;
                let cdf = CdfTable::for_walk(n, 64, qt)?;
                let d = ks_distance(&sample.distances, |x| cdf.eval(x));
                Ok(CheckRecord::absolute(&id, &identity, d, 0.0, 0.01)
                    .with_note(format!("seed {MC_SEED}, total mass {:.9}", cdf.total())))
            })
        })
        .collect()
}

/// `J0 Y0' - J0' Y0 - 2/(pi t)`, relative, worst over a log grid on `[1e-3, 50]`.
pub fn wronskian_residual(points: usize) -> (f64, f64) {
    let (lo, hi) = (1e-3f64.ln(), 50f64.ln());
    let mut worst = (0.0, lo.exp());
    for i in 0..points {
        let t = (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp();
        let w = j1_unchecked(t) * y0_unchecked(t) - j0_unchecked(t) * y1_unchecked(t);
        let want = 2.0 / (PI * t);
        let r = (w - want).abs() / want;
        if r > worst.0 {
            worst = (r, t);
        }
    }
    worst
}

fn properties_group(tol: f64) -> Vec<CheckRecord> {
    let qt = qtol(tol, 1e-7);
    let mut out = Vec::new();
    for n in 3..=9u32 {
        let id = format!("normalization-n{n}");
        let identity = format!("int_0^{n} p_{n}(x) dx = 1, oscillatory route only");
        out.push(guarded(&id, &identity, 1e-6, || {
            let table = DensityTable::build(n, TABLE_LEVEL, RoutePolicy::DirectOnly, qt)?;
            let (m, _) = table.moment(Complex64::new(0.0, 0.0), 0.0);
            Ok(CheckRecord::absolute(&id, &identity, m.re, 1.0, 1e-6))
        }));
    }
    let (w, at) = wronskian_residual(400);
    out.push(
        CheckRecord::absolute("wronskian-J0Y0", "J1 Y0 - J0 Y1 = 2/(pi t) on [1e-3, 50], relative", w, 0.0, 1e-12)
            .with_note(format!("worst at t = {at:.4e}")),
    );
    out.push(guarded("determinism-simulate", "simulation is independent of the worker count", 0.0, || {
        let run = |threads: usize| -> Result<Vec<f64>> {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InternalConsistency(e.to_string()))?;
            pool.install(|| simulate(5, 50_000, MC_SEED)).map(|s| s.distances)
        };
        let (a, b) = (run(1)?, run(4)?);
        let differ = a.iter().zip(&b).filter(|(x, y)| x.to_bits() != y.to_bits()).count() + a.len().abs_diff(b.len());
        Ok(CheckRecord::absolute("determinism-simulate", "simulation is independent of the worker count", differ as f64, 0.0, 0.0))
    }));
    out.push(guarded("determinism-density", "density grid is bit-identical across runs", 0.0, || {
        let grid = |_: ()| -> Result<Vec<u64>> {
            (1..40).map(|i| Ok(direct(5, 0.12 * i as f64, qt)?.value.to_bits())).collect()
        };
        let differ = grid(())?.iter().zip(&grid(())?).filter(|(a, b)| a != b).count();
        Ok(CheckRecord::absolute("determinism-density", "density grid is bit-identical across runs", differ as f64, 0.0, 0.0))
    }));
    out
}
