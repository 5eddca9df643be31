//! Both extraction pipelines on one generated graph, with certificates.
//!
//! `cargo run --example extract -- [n] [seed]`

use blockade::certificate::verify;
use blockade::lab::{generate, Family, GeneratorSpec};
use blockade::profile::ConstantsProfile;
use blockade::rational::{ratio, Show};
use blockade::round2::{eh_extract, polynomial_rodl};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().map_or(Ok(200), |s| s.parse())?;
    let seed = args.next().map_or(Ok(1), |s| s.parse())?;
    let profile = ConstantsProfile::demo_small();
    // complements of P5-free substitution graphs are house-free
    let g = generate(&GeneratorSpec::new(Family::Substitution, n, seed).complemented())?;

    let rodl = polynomial_rodl(&g, &ratio(1, 4), &profile, seed)?;
    println!(
        "restricted subgraph: {} vertices on the {} side (source {}, target {})",
        rodl.set.len(),
        rodl.side.as_str(),
        rodl.source.as_str(),
        Show(&rodl.target)
    );
    println!("  {}", verify(&rodl.certificate(&profile), &g)?);

    let eh = eh_extract(&g, &profile, seed)?;
    println!(
        "{} of {} vertices, exponent {:.3} (source {})",
        eh.kind.as_str(),
        eh.set.len(),
        eh.exponent(g.n()),
        eh.source.as_str()
    );
    println!("  {}", verify(&eh.certificate(&profile), &g)?);
    Ok(())
}
