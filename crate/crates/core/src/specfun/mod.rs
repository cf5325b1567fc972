//! Scalar special-function kernels.

pub mod bessel;
pub mod expint;
pub mod gamma;

pub use bessel::{
    i0, i0_scaled, j0, j0_zero, j0_zero_with, j1, j1_zero, k0, k0_scaled, y0, y1, EvalAccuracy,
    EULER_GAMMA,
};
pub use expint::expint_e;
pub use gamma::{gamma, gamma_c, ln_gamma, rgamma, rgamma_c};
