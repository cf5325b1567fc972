//! The density p_n(x) by each available route.

use kluyver::walks::{density, DensityRoute};

fn show(n: u32, x: f64, route: DensityRoute) -> String {
    match density(n, x, route, 1e-10) {
        Ok(r) => format!("{:.12}", r.value),
        Err(_) => "-".into(),
    }
}

fn main() {
    let routes = [
        DensityRoute::Direct,
        DensityRoute::ClosedForm,
        DensityRoute::Feynman,
        DensityRoute::Series,
        DensityRoute::Rayleigh,
    ];
    println!("{:>2} {:>5} {:>16} {:>16} {:>16} {:>16} {:>16}", "n", "x", "direct", "closed", "feynman", "series", "rayleigh");
    for n in [3u32, 4, 5, 7] {
        for x in [0.25, 0.5, 0.9, 1.5, 2.5] {
            let cols: Vec<String> = routes.iter().map(|&r| format!("{:>16}", show(n, x, r))).collect();
            println!("{n:>2} {x:>5} {}", cols.join(" "));
        }
    }
}
