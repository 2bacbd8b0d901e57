//! Ratio of weighted iterate norms of multiplication by 2 to
//! max_j q^{sj} a^{tj}, over a lattice of (s, t, k).

use wdlab::frobenius::{theorem1_lattice, Theorem1Config};
use wdlab::models::{ec_point_count, elliptic_model, mult_by_m, CurveSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count = ec_point_count(&CurveSpec::new(5, 1, 1)?)?;
    let bundle = elliptic_model(count.q, count.trace)?;
    let f = mult_by_m(&bundle.model, 2)?;
    let report = theorem1_lattice(&f, bundle.frobenius().unwrap(), &Theorem1Config::default())?;
    println!("q = {}, polarization a = {}", report.q, report.a);
    for c in &report.c_by_t {
        println!("  {:<20} t <= {}: C = {:.6}", c.mode.name(), c.t, c.c);
    }
    let names: Vec<&str> = report.lemma1_modes.iter().map(|m| m.name()).collect();
    println!("spectral bound held in: {names:?}");
    println!("constant stable in t: {}, lower bound held: {}", report.c_non_increasing, report.lower_bound_consistent);
    Ok(())
}
