use kluyver::moments::maclaurin_table;
use kluyver::quad::gauss_legendre;
use kluyver::ramble::{ramble_continued, ramble_direct, residue_estimate, sum_rule_check, DensityTable, TABLE_LEVEL};
use kluyver::walks::{density_for_table, p3_coefficients, RoutePolicy};
use kluyver::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn moments_at_zero_and_two() {
    for n in 3..=8u32 {
        let w0 = ramble_direct(n, c(0.0), 1e-8).unwrap();
        let w2 = ramble_direct(n, c(2.0), 1e-8).unwrap();
        assert!((w0.re - 1.0).abs() < 1e-7, "W_{n}(0) = {}", w0.re);
        assert!((w2.re - n as f64).abs() < 1e-6, "W_{n}(2) = {}", w2.re);
        assert_eq!(w0.im, 0.0);
    }
}

#[test]
fn two_step_moment_has_closed_form() {
    // W_2(1) = 4/pi
    let w = ramble_direct(2, c(1.0), 1e-8).unwrap();
    assert!((w.re - 4.0 / std::f64::consts::PI).abs() < 1e-8);
}

/// `int_1^5 x p_5(x) dx` on cells of width 1/64, 8-point Gauss–Legendre per cell.
fn outer_first_moment() -> f64 {
    let (gx, gw) = gauss_legendre(8);
    let h = 1.0 / 64.0;
    (0..4 * 64)
        .map(|i| {
            let a = 1.0 + i as f64 * h;
            gx.iter()
                .zip(&gw)
                .map(|(x, w)| {
                    let t = a + 0.5 * h * (x + 1.0);
                    w * t * density_for_table(5, t, RoutePolicy::DirectOnly, 1e-11).unwrap()
                })
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

#[test]
fn five_step_first_moment_by_split() {
    let t = maclaurin_table(2, 60, 1e-13).unwrap();
    let inner: f64 = t.coeffs.iter().enumerate().map(|(k, r)| r / (2 * k + 3) as f64).sum();
    let split = inner + outer_first_moment();
    let direct = ramble_direct(5, c(1.0), 1e-8).unwrap().re;
    let cont = ramble_continued(2, c(-1.0), 1e-8).unwrap().re;
    assert!((split - direct).abs() < 1e-7, "{split} {direct}");
    assert!((cont - direct).abs() < 1e-7, "{cont} {direct}");
}

#[test]
fn residue_by_limit() {
    let r50 = maclaurin_table(2, 0, 1e-13).unwrap().coeffs[0];
    // one-sided limits carry an O(d) bias from the regular part; it cancels in the mean
    let one_sided = |d: f64| ramble_continued(2, c(2.0 + d), 1e-6).unwrap().re * d + r50;
    let (a, b) = (one_sided(1e-3), one_sided(1e-4));
    assert!(a.abs() < 1e-3 && b.abs() < 1e-4, "{a} {b}");
    assert!((a / b - 10.0).abs() < 0.01);
    assert!((one_sided(1e-3) + one_sided(-1e-3)).abs() < 1e-5);
    assert!((residue_estimate(2, 0, 1e-3).unwrap() - r50).abs() < 1e-6);
}

#[test]
fn residues_match_series_coefficients() {
    let p3 = p3_coefficients(3);
    let r7 = maclaurin_table(3, 2, 1e-13).unwrap().coeffs;
    for k in 0..3 {
        let a = residue_estimate(1, k, 1e-4).unwrap();
        assert!((a - p3[k]).abs() < 1e-5, "j = 1, k = {k}");
        let b = residue_estimate(3, k, 1e-4).unwrap();
        assert!((b - r7[k]).abs() < 1e-5, "j = 3, k = {k}");
    }
    assert!(residue_estimate(2, 0, 0.0).is_err());
}

#[test]
fn poles_are_reported() {
    match ramble_continued(2, c(4.0), 1e-8) {
        Err(Error::Pole { location, .. }) => assert_eq!(location, 4.0),
        other => panic!("expected a pole, got {other:?}"),
    }
    assert!(ramble_direct(5, c(-2.5), 1e-8).is_err());
}

#[test]
fn conjugate_symmetry() {
    let z = Complex64::new(1.0, 2.0);
    let a = ramble_continued(2, z, 1e-8).unwrap().value();
    let b = ramble_continued(2, z.conj(), 1e-8).unwrap().value();
    assert!(a.is_finite());
    assert!((a - b.conj()).norm() < 1e-9);
}

#[test]
fn sum_rule_truncates_at_even_order() {
    let r = sum_rule_check(1, c(2.0), 40, 1e-6).unwrap();
    assert!(r.truncated);
    assert!((r.lhs.re - 4.0).abs() < 1e-6);
    assert!(r.residual < 1e-6);
}

#[test]
fn sum_rule_fractional_order() {
    let r = sum_rule_check(1, c(0.5), 40, 1e-6).unwrap();
    assert!(!r.truncated);
    assert!(r.residual < 1e-5, "{}", r.residual);
    let r = sum_rule_check(2, c(1.0), 40, 1e-6).unwrap();
    assert!(r.residual < 1e-5, "{}", r.residual);
}

#[test]
fn sum_rule_integer_orders() {
    for nu in 0..=3 {
        let r = sum_rule_check(1, c(nu as f64), 40, 1e-6).unwrap();
        assert_eq!(r.truncated, nu % 2 == 0);
        assert!(r.residual < 1e-5, "nu = {nu}: {}", r.residual);
    }
    assert!(sum_rule_check(1, c(-2.0), 40, 1e-6).is_err());
    assert!(sum_rule_check(1, c(1.0), 5, 1e-6).is_err());
}

#[test]
fn density_table_normalization() {
    let t = DensityTable::build(5, TABLE_LEVEL, RoutePolicy::Best, 1e-10).unwrap();
    let (m, e) = t.moment(c(0.0), 0.0);
    assert!((m.re - 1.0).abs() < 1e-8 && e < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn continuation_agrees_with_direct(re in -0.9f64..3.0, im in -3.0f64..3.0) {
        let s = Complex64::new(re, im);
        let a = ramble_direct(5, s, 1e-7).unwrap().value();
        let b = ramble_continued(2, -s, 1e-7).unwrap().value();
        prop_assert!((a - b).norm() < 1e-7 * a.norm().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn moments_increase_with_order(a in 0.0f64..4.0, step in 0.1f64..2.0) {
        // E|X|^s is log-convex with positive slope at s = 0 for six steps
        let lo = ramble_direct(6, c(a), 1e-7).unwrap().re;
        let hi = ramble_direct(6, c(a + step), 1e-7).unwrap().re;
        prop_assert!(hi > lo);
    }
}
