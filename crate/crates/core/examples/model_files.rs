//! Writes a product model to JSON, reads it back and validates it.

use wdlab::cli::format::ModelFile;
use wdlab::cohomology::validate_model;
use wdlab::models::{elliptic_model, kunneth_bundle, projective_space_model};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bundle = kunneth_bundle(&elliptic_model(7, 3)?, &projective_space_model(1, 7)?)?;
    let text = ModelFile::from_bundle(&bundle).to_canonical_string();
    println!("{} bytes, first lines:", text.len());
    for line in text.lines().take(8) {
        println!("  {line}");
    }
    let file = ModelFile::parse(&text)?;
    assert_eq!(file.to_canonical_string(), text);
    let back = file.to_bundle()?;
    let report = validate_model(&back.model);
    println!("dims {:?}; valid = {}; checks: {}", file.dims, report.valid, report.checks_run.join(", "));
    println!("actions: {:?}", back.action_names());
    Ok(())
}
