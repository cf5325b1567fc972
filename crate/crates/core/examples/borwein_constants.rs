//! Maclaurin coefficients of p_5 from Bessel moments and the five-step identities.

use kluyver::moments::{borwein_checks, gamma_product_constants, maclaurin_table, p5_at_one};

fn main() -> kluyver::Result<()> {
    let t = maclaurin_table(2, 10, 1e-13)?;
    for (k, (r, e)) in t.coeffs.iter().zip(&t.errs).enumerate() {
        println!("r_5,{k:<2} = {r:.16e}  (+- {e:.1e})");
    }
    let g = gamma_product_constants();
    println!("gamma product  r_5,0 = {:.16}", g.r50_closed);
    println!("constant C          = {:.16}", g.c);
    println!("p5(1)               = {:.16}", p5_at_one(1e-12)?.value);
    println!();
    for r in borwein_checks(1e-10) {
        println!("{:<22} {:<8} residual {:.2e}  {}", r.id, if r.passed() { "pass" } else { "FAIL" }, r.residual, r.identity);
    }
    Ok(())
}
