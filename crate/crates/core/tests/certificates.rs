//! Tampering with a certificate, in memory or on disk, must be caught.

mod common;

use std::fs;

use blockade::bitset::VertexSet;
use blockade::certificate::{verify, verify_document, BlockadeKind, Certificate, CertificateDoc, HomKind};
use blockade::cli;
use blockade::graph::Graph;
use blockade::io::{self, GraphFormat};
use blockade::primitives::complete_blockade_from_anticomponents;
use blockade::profile::ConstantsProfile;
use blockade::rational::ratio;
use common::*;
use serde_json::Value;

fn joined(seed: u64) -> Graph {
    let mut r = rng(seed);
    let parts: Vec<Graph> = (0..9).map(|i| binomial(4 + i % 3, 0.4, &mut r)).collect();
    join(&parts)
}

fn blockade_doc(g: &Graph) -> CertificateDoc {
    let b = complete_blockade_from_anticomponents(g, 3).unwrap();
    Certificate::blockade("complete_blockade", &ConstantsProfile::demo_small(), g, b, BlockadeKind::Complete, ratio(1, 4))
        .to_doc(g)
}

/// Rewrites the first block with `edit` and re-serialises.
fn tamper(doc: &CertificateDoc, edit: impl FnOnce(&mut Vec<Value>)) -> String {
    let mut value: Value = serde_json::from_str(&doc.to_json()).unwrap();
    edit(value["blocks"][0].as_array_mut().unwrap());
    serde_json::to_string_pretty(&value).unwrap()
}

fn verdict_of(text: &str, g: &Graph) -> bool {
    CertificateDoc::from_json(text)
        .ok()
        .and_then(|d| verify_document(&d, g).ok())
        .is_some_and(|v| v.accepted())
}

#[test]
fn genuine_blockade_is_accepted() {
    let g = joined(1);
    assert!(verdict_of(&blockade_doc(&g).to_json(), &g));
}

#[test]
fn every_single_vertex_edit_of_a_blockade_is_caught() {
    let g = joined(2);
    let doc = blockade_doc(&g);
    let blocks: Vec<Vec<u64>> = serde_json::from_value(serde_json::from_str::<Value>(&doc.to_json()).unwrap()["blocks"].clone()).unwrap();
    let first = blocks[0].clone();
    let narrowest = blocks.iter().map(Vec::len).min().unwrap() == first.len();
    // dropping a vertex from a narrowest block falls below the claimed width
    for i in 0..first.len() {
        let text = tamper(&doc, |b| {
            b.remove(i);
        });
        assert_eq!(verdict_of(&text, &g), !narrowest, "dropping position {i}");
    }
    // add any vertex of the same anticomponent or already used elsewhere
    for v in 0..g.n() as u64 {
        if first.contains(&v) {
            continue;
        }
        let text = tamper(&doc, |b| b.push(Value::from(v)));
        let anti = g.anticomponents();
        let home = anti.iter().find(|c| c.contains(v as usize)).unwrap();
        let breaks_completeness = first.iter().any(|&u| !g.has_edge(u as usize, v as usize));
        if breaks_completeness || home.contains(first[0] as usize) {
            assert!(!verdict_of(&text, &g), "adding {v} went unnoticed");
        }
    }
    // out-of-range vertices are structural errors
    let text = tamper(&doc, |b| b.push(Value::from(g.n() as u64 + 5)));
    assert!(!verdict_of(&text, &g));
}

#[test]
fn a_certificate_for_another_graph_is_rejected() {
    let g = joined(3);
    let mut other = g.clone();
    let (u, v) = g.edges()[0];
    other.remove_edge(u, v);
    assert!(!verdict_of(&blockade_doc(&g).to_json(), &other));
}

#[test]
fn clique_claim_on_a_non_clique_is_rejected() {
    let g = Graph::path(4);
    let set = VertexSet::from_iter(4, [0, 1, 2]);
    let cert = Certificate::hom_set("eh_extract", &ConstantsProfile::demo_small(), set, HomKind::Clique);
    assert!(!verify(&cert, &g).unwrap().accepted());
}

#[test]
fn cli_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = joined(4);
    let graph = dir.path().join("g.txt");
    fs::write(&graph, io::write(&g, GraphFormat::EdgeList)).unwrap();
    let doc = blockade_doc(&g);
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    fs::write(&good, doc.to_json()).unwrap();
    // a repeated vertex inside a block
    fs::write(&bad, tamper(&doc, |b| {
        let v = b[0].clone();
        b.push(v);
    }))
    .unwrap();
    let run = |cert: &std::path::Path| {
        cli::main_with(["blockade", "verify", graph.to_str().unwrap(), cert.to_str().unwrap()])
    };
    assert_eq!(run(&good), 0);
    assert_eq!(run(&bad), 4);
    assert_eq!(run(&dir.path().join("missing.json")), 2);
}
