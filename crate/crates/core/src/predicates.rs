//! Sparsity, density and mixedness predicates, evaluated exactly.
//!
//! Thresholds are rationals; every comparison is done as
//! `count * den <= num * size` via [`crate::rational`].

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// `g[set]` has maximum degree at most `x * |set|`.
pub fn is_x_sparse_within(g: &Graph, set: &VertexSet, x: &Rational) -> bool {
    let bound = rational::floor_mul(x, set.len());
    set.iter().all(|v| g.degree_in(v, set) <= bound)
}

/// `g` has maximum degree at most `x * |g|`.
pub fn is_x_sparse(g: &Graph, x: &Rational) -> bool {
    rational::count_le(g.max_degree(), x, g.n())
}

/// The complement of `g[set]` is `x`-sparse.
pub fn is_co_x_sparse_within(g: &Graph, set: &VertexSet, x: &Rational) -> bool {
    let size = set.len();
    let bound = rational::floor_mul(x, size);
    set.iter().all(|v| size - 1 - g.degree_in(v, set) <= bound)
}

/// Which side of `g[set]` is sparse when the set is restricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `g[set]` itself is sparse.
    Sparse,
    /// The complement of `g[set]` is sparse.
    Dense,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Sparse => Side::Dense,
            Side::Dense => Side::Sparse,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Sparse => "sparse",
            Side::Dense => "dense",
        }
    }
}

/// One of `g[set]`, its complement is `x`-sparse; reports which (sparse side
/// first when both hold).
pub fn restricted_side(g: &Graph, set: &VertexSet, x: &Rational) -> Option<Side> {
    if is_x_sparse_within(g, set, x) {
        Some(Side::Sparse)
    } else if is_co_x_sparse_within(g, set, x) {
        Some(Side::Dense)
    } else {
        None
    }
}

pub fn is_restricted_within(g: &Graph, set: &VertexSet, x: &Rational) -> bool {
    restricted_side(g, set, x).is_some()
}

pub fn is_restricted(g: &Graph, x: &Rational) -> bool {
    is_restricted_within(g, &g.vertices(), x)
}

fn require_disjoint(a: &VertexSet, b: &VertexSet) -> Result<()> {
    if a.intersects(b) {
        let shared = a.intersection(b).to_vec();
        return Err(Error::precondition_with("sets must be disjoint", shared));
    }
    Ok(())
}

/// `b` is `x`-sparse to `a`: every vertex of `b` has at most `x * |a|`
/// neighbours in `a`.
pub fn is_sparse_to(g: &Graph, b: &VertexSet, a: &VertexSet, x: &Rational) -> Result<bool> {
    require_disjoint(a, b)?;
    let bound = rational::floor_mul(x, a.len());
    Ok(b.iter().all(|v| g.degree_in(v, a) <= bound))
}

/// `(a, b)` is weakly `x`-sparse: edge density between them is at most `x`.
/// Either side empty counts as weakly sparse.
pub fn is_weakly_sparse(g: &Graph, a: &VertexSet, b: &VertexSet, x: &Rational) -> Result<bool> {
    require_disjoint(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(true);
    }
    let edges = g.edges_between(a, b);
    Ok(rational::count_le(edges, x, a.len() * b.len()))
}

/// `v` is outside `s` and has both a neighbour and a non-neighbour in `s`.
pub fn is_mixed_on(g: &Graph, v: usize, s: &VertexSet) -> bool {
    if s.contains(v) {
        return false;
    }
    let d = g.degree_in(v, s);
    d > 0 && d < s.len()
}

/// Smallest `x` for which `b` is `x`-sparse to `a`: `max deg_a(v) / |a|`.
pub fn sparse_to_ratio(g: &Graph, b: &VertexSet, a: &VertexSet) -> Rational {
    let worst = b.iter().map(|v| g.degree_in(v, a)).max().unwrap_or(0);
    rational::fraction(worst, a.len())
}

/// Edge density between disjoint `a` and `b` (0 when either is empty).
pub fn density(g: &Graph, a: &VertexSet, b: &VertexSet) -> Rational {
    rational::fraction(g.edges_between(a, b), a.len() * b.len())
}

/// Smallest `x` for which `g[set]` is `x`-sparse.
pub fn sparsity_within(g: &Graph, set: &VertexSet) -> Rational {
    let d = g.max_degree_within(set).map_or(0, |(d, _)| d);
    rational::fraction(d, set.len())
}

/// Smallest `x` for which the complement of `g[set]` is `x`-sparse.
pub fn co_sparsity_within(g: &Graph, set: &VertexSet) -> Rational {
    let d = g.max_antidegree_within(set).map_or(0, |(d, _)| d);
    rational::fraction(d, set.len())
}

/// The side on which `g[set]` is sparsest, with that side's exact sparsity
/// (sparse side on ties).
pub fn best_restriction(g: &Graph, set: &VertexSet) -> (Side, Rational) {
    let s = sparsity_within(g, set);
    let d = co_sparsity_within(g, set);
    if s <= d {
        (Side::Sparse, s)
    } else {
        (Side::Dense, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn matching(k: usize) -> (Graph, VertexSet, VertexSet) {
        let edges: Vec<_> = (0..k).map(|i| (i, i + k)).collect();
        let g = Graph::from_edges(2 * k, &edges).unwrap();
        let a = g.vertex_set(0..k);
        let b = g.vertex_set(k..2 * k);
        (g, a, b)
    }

    #[test]
    fn empty_graph_is_sparse_for_any_threshold() {
        let g = Graph::empty(7);
        assert!(is_x_sparse(&g, &ratio(0, 1)));
        assert!(is_restricted(&g, &ratio(0, 1)));
    }

    #[test]
    fn complete_graph_is_restricted_for_every_eps() {
        for n in 1..8 {
            assert!(is_restricted(&Graph::complete(n), &ratio(0, 1)));
            assert_eq!(
                restricted_side(&Graph::complete(n), &VertexSet::full(n), &ratio(0, 1)),
                Some(if n == 1 { Side::Sparse } else { Side::Dense })
            );
        }
    }

    #[test]
    fn perfect_matching_of_size_eight() {
        let (g, a, b) = matching(8);
        let x = ratio(1, 8);
        assert!(is_sparse_to(&g, &b, &a, &x).unwrap());
        assert!(is_weakly_sparse(&g, &a, &b, &x).unwrap());
        assert!(!is_sparse_to(&g, &b, &a, &ratio(1, 9)).unwrap());
        assert!(!is_weakly_sparse(&g, &a, &b, &ratio(1, 9)).unwrap());
        assert_eq!(density(&g, &a, &b), x);
    }

    #[test]
    fn overlapping_sets_are_a_precondition_error() {
        let (g, a, _) = matching(4);
        let overlap = g.vertex_set([0, 5]);
        assert!(matches!(
            is_sparse_to(&g, &overlap, &a, &ratio(1, 2)),
            Err(Error::PreconditionViolated { .. })
        ));
        assert!(is_weakly_sparse(&g, &a, &overlap, &ratio(1, 2)).is_err());
    }

    #[test]
    fn mixed_vertices() {
        let g = Graph::path(3);
        assert!(!is_mixed_on(&g, 1, &g.vertex_set([0])));
        let s = g.vertex_set([0, 2]);
        assert!(!is_mixed_on(&g, 1, &s));
        let g = Graph::path(4);
        assert!(is_mixed_on(&g, 1, &g.vertex_set([2, 3])));
        assert!(!is_mixed_on(&g, 2, &g.vertex_set([2, 3])));
    }
}
