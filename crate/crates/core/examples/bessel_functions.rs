//! Tabulate the Bessel functions and the first zeros of J0.

use kluyver::specfun::{i0_scaled, j0, j0_zero, j1, k0_scaled, y0, y1};

fn main() -> kluyver::Result<()> {
    println!("{:>6} {:>20} {:>20} {:>20} {:>20} {:>20} {:>20}", "t", "J0", "J1", "Y0", "Y1", "I0 e^-t", "K0 e^t");
    for t in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 60.0] {
        println!(
            "{t:>6} {:>20.15} {:>20.15} {:>20.15} {:>20.15} {:>20.15} {:>20.15}",
            j0(t)?,
            j1(t)?,
            y0(t)?,
            y1(t)?,
            i0_scaled(t)?.0,
            k0_scaled(t)?
        );
    }
    for k in 1..=5 {
        let z = j0_zero(k)?;
        println!("j0 zero {k}: {z:.15}  J0 there: {:.1e}", j0(z)?);
    }
    Ok(())
}
