//! Run the full verification battery and print one line per check.

use kluyver::verify::verify;
use std::time::Instant;

fn main() -> kluyver::Result<()> {
    let filter = std::env::args().nth(1);
    let start = Instant::now();
    let report = verify(filter.as_deref(), 1e-9)?;
    for (group, r) in report.records() {
        println!(
            "{group:<11} {:<28} {:>14} residual {:>9.2e} tol {:>7.1e}  {}",
            r.id,
            format!("{:?}", r.status),
            r.residual,
            r.tolerance,
            r.note.as_deref().unwrap_or("")
        );
    }
    println!("all passed: {}  ({:.1?})", report.passed(), start.elapsed());
    Ok(())
}
