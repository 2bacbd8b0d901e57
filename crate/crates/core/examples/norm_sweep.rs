//! The r-sweep of r^k‖f|H^k‖ / max_j r^{2j}‖f|N^j‖ for Frobenius actions.

use wdlab::frobenius::{default_r_grid, eq2_sweep};
use wdlab::models::builtin_bundles;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, bundle) in builtin_bundles()? {
        let q = bundle.model.q().unwrap();
        let s = eq2_sweep(bundle.frobenius().unwrap(), &default_r_grid(q))?;
        println!(
            "{name:<32} C = {:<10.6} at r = {:.4}, degree {}; transpose identity exact: {}",
            s.c_approx, s.argmax_r, s.argmax_degree, s.transpose_identity_holds
        );
    }
    Ok(())
}
