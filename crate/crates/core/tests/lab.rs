//! Generators and oracles of the lab checked against each other.

mod common;

use blockade::lab::{
    brute_max_hom, exhaustive_max_hom, generate, catalogue, max_clique, Family, GeneratorSpec,
};
use blockade::pattern::PatternGraph;
use common::*;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Cograph), Just(Family::Substitution), Just(Family::SparseRandom)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn generated_graphs_avoid_their_pattern(family in family(), n in 1usize..=18, seed in any::<u64>(), co in any::<bool>()) {
        let mut spec = GeneratorSpec::new(family, n, seed);
        spec.complement = co;
        let g = generate(&spec).unwrap();
        prop_assert_eq!(g.n(), n);
        let excluded = spec.excludes();
        prop_assert!(!has_copy_by_injections(&g, excluded.pattern().graph()), "{}", spec.label());
        if excluded.implies_house_free() {
            prop_assert!(!has_copy_by_injections(&g, PatternGraph::house().graph()));
        }
    }

    #[test]
    fn complement_swaps_clique_and_stable(n in 1usize..=16, seed in any::<u64>(), p in 0.1f64..0.9) {
        let g = binomial(n, p, &mut rng(seed));
        let (c, s) = brute_max_hom(&g).unwrap();
        let (cc, cs) = brute_max_hom(&g.complement()).unwrap();
        prop_assert_eq!((c, s), (cs, cc));
        prop_assert_eq!((c, s), exhaustive_max_hom(&g).unwrap());
    }

    #[test]
    fn branch_and_bound_clique_matches_exhaustive(n in 1usize..=18, seed in any::<u64>(), p in 0.2f64..0.95) {
        let g = binomial(n, p, &mut rng(seed));
        let clique = max_clique(&g).unwrap();
        prop_assert!(g.is_clique(&clique));
        prop_assert_eq!(clique.len(), exhaustive_max_hom(&g).unwrap().0);
    }
}

#[test]
fn generation_is_reproducible() {
    for family in Family::ALL {
        let spec = GeneratorSpec::new(family, 64, 7);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap(), "{}", spec.label());
    }
}

#[test]
fn catalogue_matches_the_injection_oracle() {
    let cat = catalogue::shared();
    for k in 1..=5 {
        let m = k * (k - 1) / 2;
        let free: Vec<u32> =
            (0u32..1 << m).filter(|&mask| !has_copy_by_injections(&graph_from_mask(k, mask), PatternGraph::p5().graph())).collect();
        assert_eq!(cat.graphs(k).len(), free.len(), "order {k}");
    }
}
