//! Audits sp(A·A^τ) <= (1 + sp(A))^2 for Jordan blocks, the built-in
//! matrices and a batch of random complex matrices, in both conjugation modes.

use num_complex::Complex64;
use wdlab::frobenius::{builtin_cases, lemma1_audit, lemma1_random, trace_radius_identity, Lemma1Input};
use wdlab::linalg::{Conjugation, RootConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RootConfig::default();
    let jordan = Lemma1Input::Jordan { lambda: Complex64::new(1.0, 1.0), size: 4 };
    let mut inputs = vec![jordan];
    inputs.extend(builtin_cases());
    for input in &inputs {
        for mode in Conjugation::ALL {
            let a = lemma1_audit(input, mode, 1e-9, &cfg)?;
            println!(
                "{:<28} {:<20} sp(A) = {:>8.4}  sp(B) = {:>10.4}  bound = {:>10.4}  holds = {}{}",
                a.input,
                mode.name(),
                a.sp_a,
                a.sp_b,
                a.bound,
                a.holds,
                a.entries_match.map(|m| format!("  entries match = {m}")).unwrap_or_default()
            );
        }
    }

    let random = lemma1_random(200, 8, 42)?;
    for mode in Conjugation::ALL {
        let mut passed = 0;
        for input in &random {
            passed += lemma1_audit(input, mode, 1e-9, &cfg)?.holds as usize;
        }
        println!("random, {}: {passed}/{} within the bound", mode.name(), random.len());
    }

    let a = builtin_cases()[1].matrix();
    let tr = trace_radius_identity(&a, Conjugation::Entrywise, 40, &cfg)?;
    println!("trace roots for {}: sp = {:.6}, limsup estimate = {:.6}", builtin_cases()[1].label(), tr.sp, tr.limsup_estimate);
    Ok(())
}
