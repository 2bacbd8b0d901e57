//! Dynamical degrees λ_j against cohomological growth rates χ_k for a few
//! actions on a product of two curves.

use wdlab::models::{abelian_product_from_traces, mult_by_m};
use wdlab::spectral::{chi_k, ddc_check, entropy_comparison, lambda_j, SpectralConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bundle = abelian_product_from_traces(7, &[1, -3])?;
    let cfg = SpectralConfig { iters: 60, ..Default::default() };
    let actions = [("frobenius", bundle.frobenius().unwrap().clone()), ("mult-by-3", mult_by_m(&bundle.model, 3)?)];
    for (name, f) in &actions {
        println!("{name}");
        for j in 0..=bundle.model.n() {
            let l = lambda_j(f, j, &cfg)?;
            println!("  λ_{j} = {:.6} (iterate root {:.6})", l.spectral, l.empirical);
        }
        for k in 0..=bundle.model.top() {
            println!("  χ_{k} = {:.6}", chi_k(f, k, &cfg)?.spectral);
        }
        let ddc = ddc_check(f, 1e-9, &cfg)?;
        let ent = entropy_comparison(f, 1e-9, &cfg)?;
        println!("  χ_2j = λ_j for all j: {}", ddc.iter().all(|r| r.holds));
        println!("  max χ = {:.6}, max λ = {:.6}", ent.max_chi, ent.max_lambda);
    }
    Ok(())
}
