//! The binomial sum rule linking even and odd walk moments.

use kluyver::ramble::sum_rule_check;
use num_complex::Complex64;

fn main() -> kluyver::Result<()> {
    let cases = [(1, 0.5), (1, 1.0), (1, 1.5), (1, 2.0), (2, 0.5), (2, 1.0), (1, -0.5)];
    for (j, nu) in cases {
        let r = sum_rule_check(j, Complex64::new(nu, 0.0), 64, 1e-6)?;
        println!(
            "W_{}({nu:>4}) = {:.12}   sum = {:.12}   residual {:.1e}{}",
            2 * j + 2,
            r.lhs.re,
            r.rhs.re,
            r.residual,
            if r.truncated { "  (finite sum)" } else { "" }
        );
    }
    Ok(())
}
