//! Quadrature engines.
//!
//! * [`de_integrate`]: double-exponential trapezoid on `(0, inf)` for damped integrands,
//! * [`tanh_sinh`]: the finite-interval DE rule, with reusable node tables,
//! * [`oscillatory_integrate`]: zero-partition panels plus Levin-u acceleration,
//! * [`bessel_product_integral`]: panels plus an analytic Hankel tail for
//!   `int t^p prod J0(s_i t)^{m_i} dt`.

mod bessel_product;
mod de;
mod gauss;
mod levin;
mod oscillatory;

pub use bessel_product::{bessel_product_integral, BesselProduct};
pub use de::{de_integrate, de_integrate_with, tanh_sinh, Decay, DeOptions, TanhSinhRule};
pub use gauss::{gauss_legendre, gl15};
pub use levin::{euler_average, levin_sum, Levin};
pub use oscillatory::{oscillatory_integrate, OscillatorySpec, Partition};

use serde::Serialize;

/// Value of a numeric integral with its error estimate and cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub n_evals: usize,
}

impl QuadResult {
    pub fn scaled(self, factor: f64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            n_evals: self.n_evals,
        }
    }
}
