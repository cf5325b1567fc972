//! Moments W_n(s) of the walk distance, continued past the convergence strip.

use kluyver::ramble::{ramble_continued, ramble_direct, residue_estimate};
use num_complex::Complex64;

fn main() -> kluyver::Result<()> {
    for n in 3..=8 {
        let w: Vec<String> = [0.0, 1.0, 2.0, 3.0]
            .iter()
            .map(|&s| ramble_direct(n, Complex64::new(s, 0.0), 1e-8).map(|v| format!("{:.12}", v.re)))
            .collect::<kluyver::Result<_>>()?;
        println!("W_{n}(0..3) = {}", w.join("  "));
    }
    // W_5(s) for Re s <= -2 through the continuation in z = -s
    for z in [1.0, 2.5, 3.0, 5.0] {
        let v = ramble_continued(2, Complex64::new(z, 0.0), 1e-8)?;
        println!("W_5({:>4}) = {:.12}", -z, v.re);
    }
    let v = ramble_continued(2, Complex64::new(1.0, 2.0), 1e-8)?.value();
    println!("W_5(-1-2i) = {v:.12}");
    for k in 0..3 {
        println!("Res W_5 at s = {}: {:.12}", -2 * k as i32 - 2, residue_estimate(2, k, 1e-4)?);
    }
    Ok(())
}
