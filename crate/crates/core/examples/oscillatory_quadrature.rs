//! Semi-infinite oscillatory integrals of Bessel products.

use kluyver::quad::{bessel_product_integral, de_integrate, BesselProduct};
use kluyver::specfun::k0;

fn main() -> kluyver::Result<()> {
    let r = de_integrate(|t| k0(t).unwrap_or(0.0), 1e-13)?;
    println!("int K0          = {:.15} (pi/2 = {:.15})", r.value, std::f64::consts::FRAC_PI_2);

    for n in [3u32, 5, 6, 7] {
        let prod = BesselProduct { factors: vec![(1.0, n)], t_power: 1 };
        let r = bessel_product_integral(&prod, 1e-12)?;
        println!("int J0^{n} t dt  = {:.15}  err {:.1e}  evals {}", r.value, r.err_estimate, r.n_evals);
    }
    // p_5(1/2) = (1/2) int J0(t/2) J0(t)^5 t dt
    let prod = BesselProduct { factors: vec![(0.5, 1), (1.0, 5)], t_power: 1 };
    println!("p5(0.5)         = {:.15}", 0.5 * bessel_product_integral(&prod, 1e-12)?.value);
    Ok(())
}
