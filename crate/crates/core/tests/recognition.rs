//! Induced-subgraph search against an all-injections oracle on random
//! graphs larger than the exhaustive acceptance range.

mod common;

use blockade::graph::Graph;
use blockade::pattern::{find_induced_copy, is_induced_copy, PatternGraph};
use common::*;
use proptest::prelude::*;

fn patterns() -> [PatternGraph; 4] {
    [PatternGraph::p4(), PatternGraph::p5(), PatternGraph::house(), PatternGraph::c5()]
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.05f64..0.95).prop_map(|(n, seed, p)| binomial(n, p, &mut rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn search_agrees_with_injections(g in graph_strategy(11)) {
        for p in patterns() {
            let found = find_induced_copy(&g, &p);
            prop_assert_eq!(found.is_some(), has_copy_by_injections(&g, p.graph()), "{}", p.name());
            if let Some(map) = found {
                prop_assert!(is_induced_copy(&g, p.graph(), &map));
            }
        }
    }

    #[test]
    fn complement_swaps_patterns(g in graph_strategy(12)) {
        let co = g.complement();
        for p in patterns() {
            prop_assert_eq!(find_induced_copy(&g, &p).is_some(), find_induced_copy(&co, &p.complement()).is_some());
        }
    }
}

#[test]
fn self_complementary_patterns() {
    assert!(has_copy_by_injections(PatternGraph::p4().complement().graph(), PatternGraph::p4().graph()));
    assert!(has_copy_by_injections(PatternGraph::c5().complement().graph(), PatternGraph::c5().graph()));
    // the house is the complement of P5
    assert!(has_copy_by_injections(PatternGraph::p5().complement().graph(), PatternGraph::house().graph()));
}
