use kluyver::moments::{
    bessel_moment, borwein_checks, gamma_product_constants, j0_fifth_moment, j1_fifth_moment, maclaurin_table,
    p5_at_one, published, MomentSpec,
};
use kluyver::specfun::{gamma, i0_scaled, k0_scaled};
use kluyver::walks::feynman;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Composite Simpson on `[a, b]` with exponentially scaled Bessel factors.
fn simpson_moment(a_pow: i32, b_pow: i32, k: i32, lo: f64, hi: f64, panels: usize) -> f64 {
    let f = |t: f64| {
        let (i, _) = i0_scaled(t).unwrap();
        let kk = k0_scaled(t).unwrap();
        i.powi(a_pow) * kk.powi(b_pow) * (((a_pow - b_pow) as f64) * t).exp() * t.powi(k)
    };
    let h = (hi - lo) / panels as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..panels {
        s += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn gamma_kernel() {
    assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
}

#[test]
fn five_bessel_moment_is_gamma_product() {
    let g = gamma(1.0 / 15.0) * gamma(2.0 / 15.0) * gamma(4.0 / 15.0) * gamma(8.0 / 15.0);
    let want = g / (240.0 * 5f64.sqrt());
    let got = bessel_moment(&MomentSpec::plain(1, 4, 1), 1e-13).unwrap().value;
    assert!(rel(got, want) < 1e-10, "{got} vs {want}");
}

#[test]
fn three_bessel_moments() {
    let base = PI / (3.0 * 3f64.sqrt());
    let s1 = bessel_moment(&MomentSpec::plain(1, 2, 1), 1e-13).unwrap().value;
    assert!(rel(s1, base) < 1e-10);
    let s3 = bessel_moment(&MomentSpec::plain(1, 2, 3), 1e-13).unwrap().value;
    assert!(rel(s3, base * (2.0f64 / 3.0).powi(2) * 3.0) < 1e-10, "{s3}");
    let oracle = simpson_moment(1, 2, 3, 1e-9, 40.0, 200_000);
    assert!((s3 - oracle).abs() < 1e-8);
}

#[test]
fn five_step_coefficients() {
    let t = maclaurin_table(2, 12, 1e-13).unwrap();
    assert!((t.coeffs[0] - published::R50).abs() < 1e-9);
    assert!((t.coeffs[1] - published::R51).abs() < 1e-10);
    assert!((t.coeffs[2] - published::R52).abs() < 1e-11);
    assert!(t.underflow.iter().all(|u| !u));
    assert_eq!(t.per_m_parts.len(), 1);
    assert_eq!(t.per_m_parts[0].q, 30.0);
}

#[test]
fn gamma_constants_agree_with_table() {
    let c = gamma_product_constants();
    let t = maclaurin_table(2, 0, 1e-13).unwrap();
    assert!(rel(c.r50_closed, t.coeffs[0]) < 1e-9);
    assert!(rel(c.c, c.r50_closed * PI * PI / 30.0) < 1e-10);
}

#[test]
fn five_step_coefficients_decay_like_ninths() {
    let t = maclaurin_table(2, 20, 1e-12).unwrap();
    for k in 0..20 {
        assert!(t.coeffs[k] > 0.0);
        let ratio = t.coeffs[k + 1] / t.coeffs[k];
        if k >= 3 {
            assert!(ratio < 1.0 / 9.0 + 0.05, "k = {k}: {ratio}");
        }
    }
}

#[test]
fn series_matches_damped_moments_inside_unit_disc() {
    for j in [1, 2, 3] {
        let t = maclaurin_table(j, 60, 1e-12).unwrap();
        for x in [0.1, 0.4, 0.7] {
            let (s, e) = t.sum_at(x);
            let f = feynman(2 * j + 1, x, 1e-11).unwrap().value;
            assert!((s - f).abs() < 1e-9 + e, "j = {j}, x = {x}: {s} vs {f}");
        }
    }
}

#[test]
fn fifth_power_moments() {
    let r50 = maclaurin_table(2, 0, 1e-13).unwrap().coeffs[0];
    let j1 = j1_fifth_moment(1e-12).unwrap().value;
    let want = (r50 / 6.0 + 105.0 / (16.0 * PI.powi(4) * r50)) / 8.0;
    assert!((j1 - want).abs() < 1e-8);
    assert!((j0_fifth_moment(1e-12).unwrap().value - published::R50).abs() < 1e-8);
}

#[test]
fn fettis_gap() {
    let p5 = p5_at_one(1e-12).unwrap().value;
    let r50 = maclaurin_table(2, 0, 1e-13).unwrap().coeffs[0];
    assert!((p5 - r50 - published::FETTIS_GAP).abs() < 1e-9);
}

#[test]
fn identity_battery_passes() {
    for r in borwein_checks(1e-10) {
        assert!(r.passed(), "{r:?}");
    }
}
