use kluyver::walks::{
    density, density_for_table, feynman, histogram_fd, ks_distance, rayleigh_approx, simulate, BinRule, CdfTable,
    DensityRoute, RoutePolicy,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const TOL: f64 = 1e-9;

fn direct(n: u32, x: f64) -> f64 {
    density(n, x, DensityRoute::Direct, TOL).unwrap().value
}

#[test]
fn two_step_closed_form() {
    let p = density(2, 0.0, DensityRoute::ClosedForm, TOL).unwrap().value;
    assert!((p - 1.0 / PI).abs() < 1e-15);
    let x: f64 = 1.3;
    let p = density(2, x, DensityRoute::ClosedForm, TOL).unwrap().value;
    assert!((p - 2.0 / (PI * (4.0 - x * x).sqrt())).abs() < 1e-14);
}

#[test]
fn five_steps_at_one_by_two_routes() {
    let a = density(5, 1.0, DensityRoute::Feynman, TOL).unwrap().value;
    let b = direct(5, 1.0);
    assert!((a - b).abs() < 1e-7, "{a} {b}");
}

/// `(2x/(pi sqrt3)) sum_k [sum_j C(k,j)^2 C(2j,j)] (x/3)^{2k}`, with binomials built exactly.
fn p3_binomial_oracle(x: f64) -> f64 {
    fn c(n: u64, k: u64) -> f64 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as f64
    }
    let z = (x / 3.0).powi(2);
    let mut sum = 0.0;
    for k in 0..40u64 {
        let inner: f64 = (0..=k).map(|j| c(k, j) * c(k, j) * c(2 * j, j)).sum();
        sum += inner * z.powi(k as i32);
    }
    2.0 * x / (PI * 3f64.sqrt()) * sum
}

#[test]
fn three_step_series_matches_binomial_sum() {
    let s = density(3, 0.5, DensityRoute::Series, TOL).unwrap().value;
    let oracle = p3_binomial_oracle(0.5);
    assert!((s - oracle).abs() < 1e-10, "{s} {oracle}");
    assert!((s - direct(3, 0.5)).abs() < 1e-8);
}

#[test]
fn routes_agree_for_odd_walks() {
    for n in [3, 5, 7, 9] {
        for i in 1..=19 {
            let x = i as f64 * 0.05;
            let d = direct(n, x);
            let f = feynman(n, x, TOL).unwrap().value;
            assert!((d - f).abs() < 1e-7, "n = {n}, x = {x}");
        }
    }
}

#[test]
fn route_domain_errors() {
    assert!(density(4, 0.5, DensityRoute::Feynman, TOL).is_err());
    assert!(density(5, 1.5, DensityRoute::Series, TOL).is_err());
    assert!(density(6, 0.5, DensityRoute::ClosedForm, TOL).is_err());
    assert!(density(3, 1.0 + 1e-7, DensityRoute::Direct, TOL).is_err());
}

#[test]
fn three_step_logarithmic_singularity() {
    // p3 grows like (3/(2 pi^2)) log(1/|x-1|): both sides, same slope
    let slope = 3.0 / (2.0 * PI * PI);
    for side in [-1.0, 1.0] {
        let a = direct(3, 1.0 + side * 1e-4);
        let b = direct(3, 1.0 + side * 1e-5);
        assert!(b > a && a > 1.5);
        assert!(((b - a) / 10f64.ln() - slope).abs() < 1e-3, "{}", (b - a) / 10f64.ln());
    }
}

#[test]
fn support_edge() {
    for n in 3..=9 {
        assert_eq!(density_for_table(n, n as f64, RoutePolicy::Best, TOL).unwrap(), 0.0);
        assert_eq!(density_for_table(n, n as f64 + 0.5, RoutePolicy::Best, TOL).unwrap(), 0.0);
    }
    // p3 jumps to zero from sqrt(3)/(2 pi)
    assert!((direct(3, 3.0 - 1e-3) - 3f64.sqrt() / (2.0 * PI)).abs() < 1e-3);
    // p_n vanishes like (n - x)^{(n-3)/2}
    for n in [4u32, 5] {
        let ratio = direct(n, n as f64 - 1e-2) / direct(n, n as f64 - 1e-3);
        let want = 10f64.powf((n as f64 - 3.0) / 2.0);
        assert!((ratio / want - 1.0).abs() < 0.05, "n = {n}: {ratio}");
    }
    for n in 6..=9 {
        assert!(direct(n, n as f64 - 1e-3) < 1e-6, "n = {n}");
    }
}

#[test]
fn six_step_small_argument_expansion() {
    // the x^2 term comes from the mean 5/(2 pi^3 t^3) of J0(t)^6
    for x in [1.5e-3, 1.9e-3] {
        let table = density_for_table(6, x, RoutePolicy::DirectOnly, 1e-12).unwrap();
        let d = density(6, x, DensityRoute::Direct, 1e-12).unwrap().value;
        let linear = kluyver::walks::derivative_at_zero(6, 1e-12).unwrap().value * x;
        assert!((table - d).abs() < 1e-7 * d, "x = {x}: {table} vs {d}");
        assert!((table - d).abs() < 1e-2 * (linear - d).abs());
    }
}

#[test]
fn one_step_walks_have_unit_length() {
    let s = simulate(1, 10_000, 7).unwrap();
    assert!(s.distances.iter().all(|&d| (d - 1.0).abs() < 1e-15));
}

#[test]
fn two_step_second_moment() {
    let s = simulate(2, 1_000_000, 42).unwrap();
    let m2 = s.distances.iter().map(|d| d * d).sum::<f64>() / s.distances.len() as f64;
    assert!((m2 - 2.0).abs() < 0.01, "{m2}");
    assert!(s.distances.iter().all(|&d| (0.0..=2.0).contains(&d)));
}

#[test]
fn five_step_ks_distance() {
    let s = simulate(5, 100_000, 42).unwrap();
    let cdf = CdfTable::for_walk(5, 64, 1e-9).unwrap();
    assert!((cdf.total() - 1.0).abs() < 1e-7);
    let d = ks_distance(&s.distances, |x| cdf.eval(x));
    assert!(d < 0.01, "{d}");
}

/// Type-7 quantile computed afresh.
fn quantile_oracle(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i + 1 < sorted.len() {
        sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
    } else {
        sorted[i]
    }
}

#[test]
fn freedman_diaconis_width() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sample: Vec<f64> = (0..10_000).map(|_| rng.gen::<f64>()).collect();
    let mut sorted = sample.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let iqr = quantile_oracle(&sorted, 0.75) - quantile_oracle(&sorted, 0.25);
    let h = histogram_fd(&sample).unwrap();
    assert_eq!(h.rule, BinRule::FreedmanDiaconis);
    assert!(!h.fallback);
    assert!((h.bin_width - 2.0 * iqr * 1e4f64.powf(-1.0 / 3.0)).abs() < 1e-14);
    let mass: f64 = h.densities.iter().sum::<f64>() * h.bin_width;
    assert!((mass - 1.0).abs() < 1e-12);
    assert_eq!(h.counts.iter().sum::<u64>(), 10_000);
}

#[test]
fn constant_sample_falls_back() {
    let h = histogram_fd(&[2.5; 100]).unwrap();
    assert!(h.fallback);
    assert_eq!(h.rule, BinRule::Sturges);
    assert!(histogram_fd(&[]).is_err());
}

#[test]
fn five_step_histogram_tracks_density() {
    let s = simulate(5, 100_000, 42).unwrap();
    let h = histogram_fd(&s.distances).unwrap();
    for (c, d) in h.centers().into_iter().zip(&h.densities) {
        let p = density_for_table(5, c, RoutePolicy::Best, 1e-9).unwrap();
        assert!((d - p).abs() < 0.03, "x = {c}: {d} vs {p}");
    }
}

#[test]
fn rayleigh_shape() {
    assert_eq!(rayleigh_approx(4, 0.0), 0.0);
    for n in [3u32, 8, 20] {
        // Simpson on [0, 12 sqrt(n)] where the tail is below 1e-60
        let hi = 12.0 * (n as f64).sqrt();
        let m = 20_000;
        let h = hi / m as f64;
        let mut s = rayleigh_approx(n, 0.0) + rayleigh_approx(n, hi);
        for i in 1..m {
            s += rayleigh_approx(n, i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        assert!((s * h / 3.0 - 1.0).abs() < 1e-12, "n = {n}");
    }
}

#[test]
fn rayleigh_close_for_eight_steps() {
    for i in 1..160 {
        let x = i as f64 * 0.05;
        assert!((rayleigh_approx(8, x) - direct(8, x)).abs() < 0.02, "x = {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn simulation_is_reproducible(n in 1u32..10, samples in 1usize..40_000, seed in any::<u64>()) {
        let a = simulate(n, samples, seed).unwrap();
        let b = simulate(n, samples, seed).unwrap();
        prop_assert_eq!(a.distances.len(), samples);
        prop_assert!(a.distances.iter().zip(&b.distances).all(|(x, y)| x.to_bits() == y.to_bits()));
        prop_assert!(a.distances.iter().all(|&d| (0.0..=n as f64 + 1e-12).contains(&d)));
    }

    #[test]
    fn densities_are_nonnegative(n in 3u32..9, u in 0.01f64..0.99) {
        let x = u * n as f64;
        prop_assume!((x - 1.0).abs() > 1e-3);
        let p = density_for_table(n, x, RoutePolicy::Best, 1e-9).unwrap();
        prop_assert!(p >= -1e-9);
    }
}
