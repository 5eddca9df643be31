//! Measures the clique-or-stable-set exponent over the house-free families
//! and prints the CSV table.
//!
//! `cargo run --release --example exponents`

use blockade::lab::{exponent_harness, Family, GeneratorSpec, HarnessOptions, Pipeline};
use blockade::profile::ConstantsProfile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut specs = Vec::new();
    for n in [32, 64, 128, 256] {
        for seed in 0..3 {
            specs.push(GeneratorSpec::new(Family::Cograph, n, seed));
            specs.push(GeneratorSpec::new(Family::Substitution, n, seed).complemented());
            specs.push(GeneratorSpec::new(Family::SparseRandom, n, seed));
        }
    }
    let opts = HarnessOptions {
        pipeline: Pipeline::Eh,
        profile: ConstantsProfile::demo_small(),
        timing: true,
    };
    let table = exponent_harness(&specs, &opts)?;
    print!("{}", table.to_csv());
    eprintln!(
        "min exponent {:.3}, median {:.3}",
        table.min_exponent().unwrap_or(0.0),
        table.median_exponent().unwrap_or(0.0)
    );
    Ok(())
}
