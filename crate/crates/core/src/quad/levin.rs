//! Series acceleration: Levin u-transform and iterated Euler averaging.

use num_complex::Complex64;

/// Levin u-transform over a growing sequence of partial sums.
///
/// Feed partial sums `s_n` together with the last term `a_n`; every call
/// returns the current transformed estimate. Works for real and complex
/// sequences (real ones pass a zero imaginary part).
#[derive(Debug, Clone)]
pub struct Levin {
    numer: Vec<Complex64>,
    denom: Vec<Complex64>,
    beta: f64,
    last: Complex64,
}

impl Default for Levin {
    fn default() -> Self {
        Levin::new(1.0)
    }
}

impl Levin {
    pub fn new(beta: f64) -> Levin {
        Levin { numer: Vec::new(), denom: Vec::new(), beta, last: Complex64::new(0.0, 0.0) }
    }

    pub fn len(&self) -> usize {
        self.numer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numer.is_empty()
    }

    /// Add partial sum `sum` whose last term was `term`; returns the new estimate.
    pub fn push(&mut self, sum: Complex64, term: Complex64) -> Complex64 {
        let n = self.numer.len();
        let nf = n as f64;
        let omega = term * (self.beta + nf);
        if omega.norm() == 0.0 {
            // an exactly vanishing term carries no information
            self.last = sum;
            return sum;
        }
        let mut t = 1.0 / (self.beta + nf);
        self.denom.push(t / omega);
        self.numer.push(sum * self.denom[n]);
        if n > 0 {
            let ratio = (self.beta + nf - 1.0) * t;
            for j in 1..=n {
                let fact = (nf - j as f64 + self.beta) * t;
                self.numer[n - j] = self.numer[n - j + 1] - self.numer[n - j] * fact;
                self.denom[n - j] = self.denom[n - j + 1] - self.denom[n - j] * fact;
                t *= ratio;
            }
        }
        let d = self.denom[0];
        let v = self.numer[0] / d;
        if d.norm() < 1e-300 || !v.re.is_finite() || !v.im.is_finite() {
            return self.last;
        }
        self.last = v;
        v
    }

    pub fn push_real(&mut self, sum: f64, term: f64) -> f64 {
        self.push(Complex64::new(sum, 0.0), Complex64::new(term, 0.0)).re
    }
}

/// Levin-u limit of `sum terms[k]`, returning the iterate whose neighbours agree
/// best as `(estimate, error)`. Suited to series whose terms have a smooth
/// asymptotic form; the transform loses stability when pushed too far, so the
/// best iterate rather than the last is reported.
pub fn levin_sum(terms: &[Complex64]) -> (Complex64, f64) {
    let mut lv = Levin::default();
    let mut s = Complex64::new(0.0, 0.0);
    let mut hist = Vec::with_capacity(terms.len());
    for &a in terms {
        s += a;
        hist.push(lv.push(s, a));
    }
    let mut best = (s, f64::INFINITY);
    for i in 2..hist.len() {
        let d = (hist[i] - hist[i - 1]).norm().max((hist[i - 1] - hist[i - 2]).norm());
        if d < best.1 {
            best = (hist[i], d);
        }
    }
    best
}

/// Iterated Euler averaging of the trailing partial sums; returns `(estimate, error)`.
pub fn euler_average(partial_sums: &[f64]) -> (f64, f64) {
    let n = partial_sums.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n == 1 {
        return (partial_sums[0], f64::INFINITY);
    }
    let mut row: Vec<f64> = partial_sums.to_vec();
    let mut err = f64::INFINITY;
    while row.len() > 1 {
        err = (row[row.len() - 1] - row[row.len() - 2]).abs();
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    (row[0], err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerates_alternating_harmonic() {
        let mut lv = Levin::default();
        let mut s = 0.0;
        let mut est = 0.0;
        for k in 1..=20 {
            let a = if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            s += a;
            est = lv.push_real(s, a);
        }
        assert!((est - 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn accelerates_logarithmic_convergence() {
        let mut lv = Levin::default();
        let mut s = 0.0;
        let mut est = 0.0;
        for k in 1..=12 {
            let a = 1.0 / (k as f64).powi(2);
            s += a;
            est = lv.push_real(s, a);
        }
        assert!((est - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-9);
        let terms: Vec<Complex64> =
            (1..=40).map(|k| Complex64::new(1.0 / (k as f64).powi(3), 0.0)).collect();
        let (v, err) = levin_sum(&terms);
        assert!((v.re - 1.202_056_903_159_594_3).abs() < 1e-10 && err < 1e-9);
    }

    #[test]
    fn euler_on_alternating_sums() {
        let sums: Vec<f64> = (1..=30)
            .scan(0.0, |s, k| {
                *s += if k % 2 == 1 { 1.0 } else { -1.0 } / (2 * k - 1) as f64;
                Some(*s)
            })
            .collect();
        let (v, _) = euler_average(&sums);
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
}
