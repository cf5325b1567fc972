//! Exact expansion of J^{2j+1} in the Hankel-power basis and the damped-moment weights.

use kluyver::wick::{degree_profile, hankel_power_sum, wick_decompose};

fn main() -> kluyver::Result<()> {
    for l in 2..=5 {
        println!("c_{l} = {}", hankel_power_sum(l));
    }
    println!();
    for j in 1..=6 {
        let d = wick_decompose(j)?;
        let terms: Vec<String> = d
            .lambda
            .iter()
            .enumerate()
            .map(|(k, l)| format!("({l}) J^{k} c_{}", 2 * j + 1 - k as u32))
            .collect();
        println!("J^{} = {}", 2 * j + 1, terms.join(" + "));
        let q: Vec<String> = d.feynman_q.iter().map(|(m, q)| format!("q_{m} = {q}")).collect();
        println!("    {}   Y-degrees {:?}", q.join(", "), degree_profile(j));
    }
    Ok(())
}
