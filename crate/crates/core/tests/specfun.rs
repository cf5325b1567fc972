mod common;

use common::GRID;
use kluyver::specfun::{i0, i0_scaled, j0, j0_zero, j1, k0, k0_scaled, y0, y1, EULER_GAMMA};
use kluyver::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs().max(1.0)
}

#[test]
fn regression_grid() {
    for (t, wj0, wj1, wy0, wy1, wi0, wk0) in GRID {
        assert!(close(j0(t).unwrap(), wj0, 1e-14), "j0({t})");
        assert!(close(j1(t).unwrap(), wj1, 1e-14), "j1({t})");
        assert!(close(y0(t).unwrap(), wy0, 1e-14), "y0({t})");
        assert!(close(y1(t).unwrap(), wy1, 1e-14), "y1({t})");
        assert!(close(i0_scaled(t).unwrap().0, wi0, 1e-14), "i0_scaled({t})");
        assert!(close(k0_scaled(t).unwrap(), wk0, 1e-14), "k0_scaled({t})");
    }
}

/// Ascending series with many terms, summed independently of the library.
fn j0_series_oracle(t: f64, terms: usize) -> f64 {
    let z = -0.25 * t * t;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..terms {
        term *= z / (k * k) as f64;
        sum += term;
    }
    sum
}

#[test]
fn j0_reference_points() {
    assert_eq!(j0(0.0).unwrap(), 1.0);
    assert!((j0(1.0).unwrap() - j0_series_oracle(1.0, 50)).abs() < 1e-15);
    assert!((j0(1.0).unwrap() - 0.7651976865579666).abs() < 1e-15);
    assert!(j0(2.404825557695773).unwrap().abs() < 1e-12);
}

#[test]
fn first_zero_by_bisection() {
    let (mut a, mut b) = (2.0, 3.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if j0_series_oracle(a, 60) * j0_series_oracle(m, 60) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    assert!((j0_zero(1).unwrap() - 0.5 * (a + b)).abs() < 1e-14);
}

#[test]
fn zero_spacing_and_values() {
    let d = j0_zero(100).unwrap() - j0_zero(99).unwrap();
    assert!((d - PI).abs() < 1e-3);
    for k in 1..=20 {
        assert!(j0(j0_zero(k).unwrap()).unwrap().abs() < 1e-12, "k = {k}");
    }
    assert!(j0_zero(0).is_err());
}

#[test]
fn small_argument_limits() {
    assert_eq!(i0(0.0).unwrap(), 1.0);
    let t = 1e-6;
    assert!((k0(t).unwrap() + (t / 2.0).ln() + EULER_GAMMA).abs() < 1e-10);
}

/// `Y0 = (2/pi)(ln(t/2) + gamma) J0 + (2/pi) sum (-1)^{k+1} H_k (t^2/4)^k / (k!)^2`.
fn y0_series_oracle(t: f64) -> f64 {
    let z = 0.25 * t * t;
    let (mut term, mut h, mut sum) = (1.0, 0.0, 0.0);
    for k in 1..60 {
        term *= -z / (k * k) as f64;
        h += 1.0 / k as f64;
        sum -= term * h;
    }
    2.0 / PI * (((0.5 * t).ln() + EULER_GAMMA) * j0_series_oracle(t, 60) + sum)
}

#[test]
fn y0_against_series() {
    assert!((y0(1.0).unwrap() - 0.08825696421567696).abs() < 1e-15);
    for t in [0.3, 1.0, 2.0, 3.5] {
        assert!((y0(t).unwrap() - y0_series_oracle(t)).abs() < 1e-14, "t = {t}");
    }
}

#[test]
fn domain_and_overflow_signals() {
    assert!(matches!(y0(0.0), Err(Error::Domain(_))));
    assert!(matches!(y1(-1.0), Err(Error::Domain(_))));
    assert!(matches!(k0(0.0), Err(Error::Domain(_))));
    assert!(matches!(j0(f64::NAN), Err(Error::Domain(_))));
    assert!(matches!(j1(f64::INFINITY), Err(Error::Domain(_))));
    assert!(matches!(i0(800.0), Err(Error::Overflow(_))));
    let (s, t) = i0_scaled(800.0).unwrap();
    assert!(s > 0.0 && s.is_finite() && t == 800.0);
}

#[test]
fn i0_k0_product_decreasing() {
    let mut prev = f64::INFINITY;
    for i in 0..=500 {
        let t = 0.1 + i as f64 * (49.9 / 500.0);
        let p = i0_scaled(t).unwrap().0 * k0_scaled(t).unwrap();
        assert!(p > 0.0 && p < prev, "t = {t}");
        prev = p;
    }
}

proptest! {
    #[test]
    fn wronskian(u in (1e-3f64).ln()..(50f64).ln()) {
        let t = u.exp();
        let w = j1(t).unwrap() * y0(t).unwrap() - j0(t).unwrap() * y1(t).unwrap();
        let want = 2.0 / (PI * t);
        prop_assert!(((w - want) / want).abs() < 1e-12, "t = {}", t);
    }

    #[test]
    fn i0_exceeds_one(t in 1e-8f64..700.0) {
        prop_assert!(i0(t).unwrap() > 1.0);
    }

    #[test]
    fn j0_sign_constant_between_zeros(k in 1usize..60, frac in 0.01f64..0.99) {
        let (a, b) = (j0_zero(k).unwrap(), j0_zero(k + 1).unwrap());
        let t = a + frac * (b - a);
        // J0 is negative after odd-numbered zeros
        let expected = if k % 2 == 1 { -1.0 } else { 1.0 };
        prop_assert_eq!(j0(t).unwrap().signum(), expected);
    }
}
