//! Exact constants comparing cohomological and algebraic norms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdlab::models::builtin_bundles;
use wdlab::spectral::norm_comparison_constant;
use wdlab::CorrespondenceAction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, bundle) in builtin_bundles()? {
        let id = norm_comparison_constant(&CorrespondenceAction::identity(bundle.model.clone()))?;
        let random = CorrespondenceAction::random(bundle.model.clone(), &mut rng, 3);
        let rnd = match norm_comparison_constant(&random) {
            Ok(c) => format!("C^2 = {} (C ≈ {:.4})", c.c_squared, c.c),
            Err(e) => format!("undefined: {e}"),
        };
        println!("{name}\n  identity: C^2 = {}\n  random:   {rnd}", id.c_squared);
    }
    Ok(())
}
