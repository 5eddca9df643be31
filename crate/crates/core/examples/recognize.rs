//! Induced-subgraph recognition on a few small graphs.
//!
//! `cargo run --example recognize`

use blockade::graph::Graph;
use blockade::pattern::{find_induced_copy, PatternGraph};

fn main() {
    let graphs = [
        ("path on 6 vertices", Graph::path(6)),
        ("cycle on 5 vertices", Graph::cycle(5)),
        ("complement of P5", Graph::path(5).complement()),
        ("complete bipartite 3,3", Graph::complete_multipartite(&[3, 3])),
    ];
    let patterns = [PatternGraph::p4(), PatternGraph::p5(), PatternGraph::house(), PatternGraph::c5()];
    for (name, g) in &graphs {
        println!("{name}:");
        for p in &patterns {
            match find_induced_copy(g, p) {
                Some(map) => println!("  induced {} on {map:?}", p.name()),
                None => println!("  {}-free", p.name()),
            }
        }
    }
}
