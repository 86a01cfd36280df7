//! Lower bounds of A_{-δI} for R = graph(c) under the tilde triplet: they
//! exist for every c but run off to -∞ as c grows.

use linrel::boundary;
use linrel::ToleranceConfig;

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let report = boundary::alternative_experiment(&[0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0], 1.0, &cfg)?;
    println!("{:>5} {:>14} {:>14} {:>9}", "c", "lower bound", "closed form", "|Δ|");
    for row in &report.rows {
        println!("{:>5} {:>14.6} {:>14.6} {:>9.1e}", row.c, row.lower_bound, row.closed_form, row.abs_error);
    }
    println!("strictly decreasing: {}", report.strictly_decreasing);
    println!("{}", report.note);
    Ok(())
}
