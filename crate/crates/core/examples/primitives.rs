//! The combinatorial building blocks on hand-made instances.
//!
//! `cargo run --example primitives`

use blockade::bitset::VertexSet;
use blockade::graph::Graph;
use blockade::lab::substitute;
use blockade::primitives::{
    anticomplete_pair_sparse, comb_or_sparse_cover, covering_set, guaranteed_eta, CombOutcome, CoverMode,
};
use blockade::rational::{self, ratio, Show};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A = 0..6, B = 6..30; vertex b sees A-vertices b mod 6 and (b+1) mod 6
    let n = 30;
    let g = Graph::from_fn(n, |u, v| u < 6 && v >= 6 && (v % 6 == u || (v + 1) % 6 == u));
    let a = VertexSet::from_iter(n, 0..6);
    let b = VertexSet::from_iter(n, 6..n);
    let cover = covering_set(&g, &a, &b, &ratio(1, 3), CoverMode::Greedy)?;
    println!("covering set at x = 1/3: {:?}", cover.to_vec());

    match comb_or_sparse_cover(&g, &a, &b, &rational::int(8))? {
        CombOutcome::CombFound { comb, k } => {
            println!("comb with {k} teeth, apexes {:?}, width {}", comb.apexes(), comb.width())
        }
        CombOutcome::SmallCover(set) => println!("small cover of {} vertices", set.len()),
    }

    // sixty disjoint copies of a P5-free piece: a sparse P5-free graph
    let piece = Graph::complete_multipartite(&[2, 2]);
    let g = substitute(&Graph::empty(60), &vec![piece; 60]);
    let eta = guaranteed_eta();
    let pair = anticomplete_pair_sparse(&g, &eta)?;
    println!(
        "anticomplete pair at eta = {}: sizes {} and {}, crossing edges {}",
        Show(&eta),
        pair.blocks()[0].len(),
        pair.blocks()[1].len(),
        g.edges_between(&pair.blocks()[0], &pair.blocks()[1])
    );
    Ok(())
}
