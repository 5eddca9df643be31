//! Few vertices of `A` whose neighbourhoods cover half of `B`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// How [`covering_set`] picks its vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverMode {
    /// Repeatedly take the vertex covering the most uncovered `B` vertices
    /// (lowest index on ties); at most `ceil(1/x)` picks.
    #[default]
    Greedy,
    /// `floor(1/x)` uniform samples with replacement, retried with a seeded
    /// generator; falls back to greedy after [`RANDOM_RETRIES`] failures.
    Randomized { seed: u64 },
}

pub const RANDOM_RETRIES: u32 = 64;

/// Vertices of `b` with a neighbour in `cover`.
pub fn covered_by(g: &Graph, cover: &VertexSet, b: &VertexSet) -> VertexSet {
    let mut hit = VertexSet::new(g.n());
    for a in cover {
        hit.union_with(g.neighbours(a));
    }
    hit.intersect_with(b);
    hit
}

/// `A' ⊆ a` such that at least half of `b` has a neighbour in `A'`, given
/// that every vertex of `b` has at least `x|a|` neighbours in `a`, for
/// `x` in `(0, 1/2]`.
pub fn covering_set(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    x: &Rational,
    mode: CoverMode,
) -> Result<VertexSet> {
    let half = rational::ratio(1, 2);
    if *x <= rational::ratio(0, 1) || *x > half {
        return Err(Error::precondition(format!(
            "x = {} must lie in (0, 1/2]",
            rational::Show(x)
        )));
    }
    if a.intersects(b) {
        return Err(Error::precondition_with(
            "sets must be disjoint",
            a.intersection(b).to_vec(),
        ));
    }
    if let Some(v) = b.iter().find(|&v| !rational::count_ge(g.degree_in(v, a), x, a.len())) {
        return Err(Error::precondition_with(
            format!(
                "vertex {v} has {} neighbours in A, fewer than x|A|",
                g.degree_in(v, a)
            ),
            vec![v],
        ));
    }
    if let CoverMode::Randomized { seed } = mode {
        if let Some(s) = randomized(g, a, b, x, seed) {
            return Ok(s);
        }
    }
    Ok(greedy(g, a, b))
}

fn enough(covered: usize, b: usize) -> bool {
    2 * covered >= b
}

fn greedy(g: &Graph, a: &VertexSet, b: &VertexSet) -> VertexSet {
    let mut chosen = VertexSet::new(g.n());
    let mut uncovered = b.clone();
    while !enough(b.len() - uncovered.len(), b.len()) {
        let mut best: Option<(usize, usize)> = None;
        for v in a.iter().filter(|&v| !chosen.contains(v)) {
            let gain = g.neighbours(v).intersection_len(&uncovered);
            if best.is_none_or(|(bg, _)| gain > bg) {
                best = Some((gain, v));
            }
        }
        match best {
            Some((gain, v)) if gain > 0 => {
                chosen.insert(v);
                uncovered.difference_with(g.neighbours(v));
            }
            _ => break,
        }
    }
    chosen
}

fn randomized(g: &Graph, a: &VertexSet, b: &VertexSet, x: &Rational, seed: u64) -> Option<VertexSet> {
    let k = rational::floor_usize(&x.recip());
    let pool = a.to_vec();
    if pool.len() <= k {
        return Some(a.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RETRIES {
        let sample = VertexSet::from_iter(g.n(), (0..k).map(|_| pool[rng.gen_range(0..pool.len())]));
        if enough(covered_by(g, &sample, b).len(), b.len()) {
            return Some(sample);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn bipartite(k: usize, edges: &[(usize, usize)]) -> (Graph, VertexSet, VertexSet) {
        let g = Graph::from_edges(2 * k, edges).unwrap();
        let a = g.vertex_set(0..k);
        let b = g.vertex_set(k..2 * k);
        (g, a, b)
    }

    #[test]
    fn complete_bipartite_needs_one_vertex() {
        let edges: Vec<_> = (0..4).flat_map(|i| (4..8).map(move |j| (i, j))).collect();
        let (g, a, b) = bipartite(4, &edges);
        let s = covering_set(&g, &a, &b, &ratio(1, 2), CoverMode::Greedy).unwrap();
        assert_eq!(s.to_vec(), vec![0]);
        assert_eq!(covered_by(&g, &s, &b).len(), 4);
    }

    #[test]
    fn perfect_matching_greedy_covers_half() {
        let edges: Vec<_> = (0..4).map(|i| (i, i + 4)).collect();
        let (g, a, b) = bipartite(4, &edges);
        let s = covering_set(&g, &a, &b, &ratio(1, 4), CoverMode::Greedy).unwrap();
        assert!(s.len() <= 4);
        assert!(2 * covered_by(&g, &s, &b).len() >= 4);
        assert_eq!(s.to_vec(), vec![0, 1]);
    }

    #[test]
    fn vertex_without_neighbours_rejected() {
        let (g, a, b) = bipartite(4, &[(0, 4), (1, 5), (2, 6)]);
        match covering_set(&g, &a, &b, &ratio(1, 4), CoverMode::Greedy) {
            Err(Error::PreconditionViolated { witness, .. }) => assert_eq!(witness, vec![7]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn randomized_mode_is_seed_deterministic() {
        let edges: Vec<_> = (0..8).flat_map(|i| [(i, 8 + i), (i, 8 + (i + 1) % 8)]).collect();
        let (g, a, b) = bipartite(8, &edges);
        let x = ratio(1, 4);
        let s1 = covering_set(&g, &a, &b, &x, CoverMode::Randomized { seed: 7 }).unwrap();
        let s2 = covering_set(&g, &a, &b, &x, CoverMode::Randomized { seed: 7 }).unwrap();
        assert_eq!(s1, s2);
        assert!(s1.len() <= 4);
        assert!(2 * covered_by(&g, &s1, &b).len() >= 8);
    }
}
