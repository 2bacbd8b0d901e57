//! Principal-branch powers F^s of a Frobenius action on H^1.

use wdlab::frobenius::{fractional_power, FractionalConfig};
use wdlab::linalg::RootConfig;
use wdlab::models::elliptic_model;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bundle = elliptic_model(13, -5)?;
    let f = bundle.frobenius().unwrap();
    let cfg = FractionalConfig::default();
    for s in [-1.5, -0.5, 0.5, 1.0, 1.5] {
        let p = fractional_power(f, 1, s, &cfg)?;
        let moduli: Vec<String> = p
            .matrix
            .eigenvalues(&RootConfig::default())?
            .roots
            .iter()
            .map(|z| format!("{:.6}", z.norm()))
            .collect();
        println!(
            "s = {s:>4}: condition {:.3}, eigen-moduli {:?} (expected {:.6}){}",
            p.condition_number,
            moduli,
            13f64.powf(s / 2.0),
            p.integer_gap.map(|g| format!(", gap to exact power {g:.1e}")).unwrap_or_default()
        );
    }
    let half = fractional_power(f, 1, 0.5, &cfg)?.matrix;
    let squared = &half * &half;
    let whole = fractional_power(f, 1, 1.0, &cfg)?.matrix;
    println!("|F^(1/2) F^(1/2) - F| = {:.2e}", squared.max_abs_diff(&whole));
    Ok(())
}
