//! Simulated walks against the exact density: histogram and KS distance.

use kluyver::walks::{density_for_table, histogram_fd, ks_distance, simulate, CdfTable, RoutePolicy};

fn main() -> kluyver::Result<()> {
    let n = 5;
    let sample = simulate(n, 100_000, 42)?;
    let h = histogram_fd(&sample.distances)?;
    println!("{} walks of {n} steps, {} bins of width {:.4} ({:?})", sample.distances.len(), h.counts.len(), h.bin_width, h.rule);
    for (c, d) in h.centers().iter().zip(&h.densities).step_by(4) {
        let p = density_for_table(n, *c, RoutePolicy::Best, 1e-9)?;
        println!("x = {c:.3}  histogram {d:.4}  p_{n} {p:.4}");
    }
    for n in 3..=8 {
        let s = simulate(n, 100_000, 42)?;
        let cdf = CdfTable::for_walk(n, 64, 1e-9)?;
        println!("n = {n}: KS distance {:.5}", ks_distance(&s.distances, |x| cdf.eval(x)));
    }
    Ok(())
}
