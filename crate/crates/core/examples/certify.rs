//! Builds a blockade certificate, round-trips it through JSON, verifies it,
//! then tampers with it and shows the rejected clause.
//!
//! `cargo run --example certify`

use blockade::certificate::{verify_document, BlockadeKind, Certificate, CertificateDoc};
use blockade::graph::Graph;
use blockade::lab::substitute;
use blockade::primitives::complete_blockade_from_anticomponents;
use blockade::profile::ConstantsProfile;
use blockade::rational::ratio;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // join of eight stable sets of size 3: every anticomponent is small
    let parts: Vec<Graph> = (0..8).map(|_| Graph::empty(3)).collect();
    let g = substitute(&Graph::complete(8), &parts);
    let b = complete_blockade_from_anticomponents(&g, 2)?;
    let profile = ConstantsProfile::demo_small();
    let cert = Certificate::blockade("complete_blockade", &profile, &g, b, BlockadeKind::Complete, ratio(1, 4));
    let json = cert.to_json(&g);
    println!("{json}");

    let doc = CertificateDoc::from_json(&json)?;
    println!("{}", verify_document(&doc, &g)?);

    // move the first vertex of block 0 into block 1: same anticomponent as
    // its former blockmates, so block 0 is no longer complete to block 1
    let mut value: serde_json::Value = serde_json::from_str(&json)?;
    let moved = value["blocks"][0].as_array_mut().unwrap().remove(0);
    value["blocks"][1].as_array_mut().unwrap().push(moved);
    let tampered = CertificateDoc::from_json(&value.to_string())?;
    println!("{}", verify_document(&tampered, &g)?);
    Ok(())
}
