//! Counts points on a curve, builds its Frobenius model and checks that every
//! eigenvalue on H^k has modulus q^{k/2}.

use wdlab::frobenius::weil_rh_check;
use wdlab::linalg::RootConfig;
use wdlab::models::{abelian_product_model, ec_point_count, elliptic_model, CurveSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c1 = ec_point_count(&CurveSpec::new(31, 3, 8)?)?;
    let c2 = ec_point_count(&CurveSpec::new(31, 1, 2)?)?;
    println!("#E1(F_31) = {} (trace {}), #E2(F_31) = {} (trace {})", c1.n, c1.trace, c2.n, c2.trace);

    for (name, bundle) in [("E1", elliptic_model(c1.q, c1.trace)?), ("E1 x E2", abelian_product_model(&[c1, c2])?)] {
        println!("{name}:");
        for row in weil_rh_check(bundle.frobenius().unwrap(), 31, 1e-9, &RootConfig::default())? {
            println!(
                "  H^{}: expected |α| = {:.6}, max relative deviation {:.2e}, holds = {}",
                row.k, row.expected, row.max_relative_deviation, row.holds
            );
        }
    }
    Ok(())
}
