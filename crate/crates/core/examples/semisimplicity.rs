//! Exact semisimplicity and the sizes of top-modulus Jordan blocks, on a
//! geometric Frobenius and on a graded map that is not a pullback.

use wdlab::models::{elliptic_model, kunneth_bundle, synthetic_non_semisimple};
use wdlab::spectral::{b_numbers, is_semisimple, SpectralConfig};
use wdlab::CorrespondenceAction;

fn describe(name: &str, f: &CorrespondenceAction) -> Result<(), Box<dyn std::error::Error>> {
    let model = f.model();
    let flags: Vec<bool> = (0..=model.top()).map(|k| is_semisimple(f, k)).collect::<Result<_, _>>()?;
    println!("{name}: semisimple by degree {flags:?}");
    for j in 0..=model.n() {
        let b = b_numbers(f, j, &SpectralConfig::default())?;
        println!("  j = {j}: b_coh = {}, b_alg = {}{}", b.b_coh, b.b_alg, if b.flagged { "  <- flagged" } else { "" });
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = elliptic_model(5, 2)?;
    let ee = kunneth_bundle(&e, &e)?;
    describe("Frobenius on E x E", ee.frobenius().unwrap())?;
    let synthetic = synthetic_non_semisimple()?;
    describe("synthetic Jordan map", synthetic.action("jordan").unwrap())?;
    Ok(())
}
