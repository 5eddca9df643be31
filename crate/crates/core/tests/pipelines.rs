//! End-to-end properties of the two extraction pipelines on house-free
//! inputs, checked against exhaustive optima where those are affordable.

mod common;

use blockade::bitset::VertexSet;
use blockade::certificate::{verify, verify_document, HomKind};
use blockade::predicates::Side;
use blockade::cli;
use blockade::graph::Graph;
use blockade::lab::{brute_best_restricted, exhaustive_max_hom, generate, Family, GeneratorSpec, Pipeline};
use blockade::profile::ConstantsProfile;
use blockade::rational::{self, ratio, Rational};
use blockade::round2::{eh_extract, polynomial_rodl};
use common::*;
use proptest::prelude::*;

fn house_free(max_n: usize) -> impl Strategy<Value = (GeneratorSpec, Graph)> {
    (0..HOUSE_FREE_FAMILIES.len(), 1..=max_n, any::<u64>()).prop_map(|(i, n, seed)| {
        let (family, complement) = HOUSE_FREE_FAMILIES[i];
        let mut spec = GeneratorSpec::new(family, n, seed);
        spec.complement = complement;
        let g = generate(&spec).unwrap();
        (spec, g)
    })
}

/// Recomputes the restricted condition from degrees inside `set`.
fn restricted(g: &Graph, set: &VertexSet, eps: &Rational, side: Side) -> bool {
    set.iter().all(|v| {
        let inside = g.degree_in(v, set);
        let deg = match side {
            Side::Sparse => inside,
            Side::Dense => set.len() - 1 - inside,
        };
        rational::count_le(deg, eps, set.len())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn rodl_is_restricted_and_never_beats_the_optimum((spec, g) in house_free(14)) {
        let profile = ConstantsProfile::demo_small();
        let eps = ratio(1, 4);
        let r = polynomial_rodl(&g, &eps, &profile, spec.seed).unwrap();
        prop_assert!(restricted(&g, &r.set, &eps, r.side));
        prop_assert!(r.set.len() <= brute_best_restricted(&g, &eps).unwrap().len());
        prop_assert!(verify(&r.certificate(&profile), &g).unwrap().accepted());
    }

    #[test]
    fn eh_set_is_homogeneous_and_bounded_by_the_optimum((spec, g) in house_free(16)) {
        let profile = ConstantsProfile::demo_small();
        let r = eh_extract(&g, &profile, spec.seed).unwrap();
        let genuine = match r.kind {
            HomKind::Clique => g.is_clique(&r.set),
            HomKind::Stable => g.is_stable(&r.set),
        };
        prop_assert!(genuine);
        let (c, s) = exhaustive_max_hom(&g).unwrap();
        prop_assert!(r.set.len() <= c.max(s));
        prop_assert!(!r.set.is_empty());
    }

    #[test]
    fn extracting_from_the_complement_describes_the_input(n in 8usize..=80, seed in any::<u64>(), eh in any::<bool>()) {
        // substitution graphs are P5-free, so their complements are house-free
        let g = generate(&GeneratorSpec::new(Family::Substitution, n, seed)).unwrap();
        let profile = ConstantsProfile::demo_small();
        let pipeline = if eh { Pipeline::Eh } else { Pipeline::Rodl };
        let doc = cli::extract(&g, pipeline, &ratio(1, 4), true, &profile, seed).unwrap();
        prop_assert!(verify_document(&doc, &g).unwrap().accepted());
    }
}

#[test]
fn pipelines_are_deterministic_per_seed() {
    let profile = ConstantsProfile::demo_small();
    for (spec, g) in house_free_corpus(8, 40, 160, 11) {
        let a = eh_extract(&g, &profile, spec.seed).unwrap();
        let b = eh_extract(&g, &profile, spec.seed).unwrap();
        assert_eq!((a.set, a.kind), (b.set, b.kind));
        let a = polynomial_rodl(&g, &ratio(1, 4), &profile, spec.seed).unwrap();
        let b = polynomial_rodl(&g, &ratio(1, 4), &profile, spec.seed).unwrap();
        assert_eq!((a.set, a.side), (b.set, b.side));
    }
}

#[test]
fn five_cycle_gives_a_pair() {
    let g = Graph::cycle(5);
    let r = eh_extract(&g, &ConstantsProfile::demo_small(), 0).unwrap();
    assert_eq!(r.set.len(), 2);
}
