//! Search for a large `ε`-restricted induced subgraph.
//!
//! No polynomial bound is promised here; callers take whatever size comes
//! back and record it.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::predicates::{is_restricted_within, Side};
use crate::rational::{self, Rational};

/// Graphs up to this size are solved exactly.
pub const EXHAUSTIVE_LIMIT: usize = 18;

/// Subproblems explored by the splitting search on larger graphs.
pub const SPLIT_BUDGET: usize = 64;

/// A vertex set `S` with `g[S]` `eps`-restricted. Exact for
/// `|g| <= EXHAUSTIVE_LIMIT`; otherwise the best of a budgeted splitting
/// search with greedy peeling at every node, returned early once it reaches
/// `target`. Empty only when `g` is.
pub fn rodl_restricted_subgraph(g: &Graph, eps: &Rational, target: &Rational) -> VertexSet {
    rodl_within(g, &g.vertices(), eps, target)
}

/// As [`rodl_restricted_subgraph`] inside the induced subgraph on `within`.
pub fn rodl_within(g: &Graph, within: &VertexSet, eps: &Rational, target: &Rational) -> VertexSet {
    if within.len() <= EXHAUSTIVE_LIMIT {
        return exhaustive(g, within, eps);
    }
    let want = rational::ceil_usize(target);
    let mut best = within.first().map_or_else(|| VertexSet::new(g.n()), |v| VertexSet::singleton(g.n(), v));
    let mut stack = vec![within.clone()];
    let mut nodes = 0;
    while let Some(s) = stack.pop() {
        if nodes >= SPLIT_BUDGET || nodes > 0 && best.len() >= want {
            break;
        }
        nodes += 1;
        if s.len() <= best.len() {
            continue;
        }
        if is_restricted_within(g, &s, eps) {
            best = s;
            continue;
        }
        for side in [Side::Sparse, Side::Dense] {
            let peeled = peel(g, &s, eps, side);
            if peeled.len() > best.len() {
                best = peeled;
            }
        }
        let (inside, outside) = split_on_hub(g, &s);
        // explore the larger child first
        let (first, second) = if inside.len() >= outside.len() { (inside, outside) } else { (outside, inside) };
        stack.push(second);
        stack.push(first);
    }
    debug_assert!(best.is_empty() || is_restricted_within(g, &best, eps));
    best
}

/// In whichever of `g[s]` and its complement has more edges, the vertex of
/// largest degree `v` splits `s` into `N(v)` and the rest minus `v`.
fn split_on_hub(g: &Graph, s: &VertexSet) -> (VertexSet, VertexSet) {
    let edges = g.edges_within(s);
    let pairs = s.len() * (s.len() - 1) / 2;
    let dense = 2 * edges > pairs;
    let v = if dense {
        g.max_antidegree_within(s)
    } else {
        g.max_degree_within(s)
    }
    .expect("s is nonempty")
    .1;
    let mut nbrs = g.neighbours(v).intersection(s);
    if dense {
        // in the complement, the neighbourhood is the non-neighbourhood
        let mut non = s.difference(&nbrs);
        non.remove(v);
        nbrs = non;
    }
    let mut rest = s.difference(&nbrs);
    rest.remove(v);
    (nbrs, rest)
}

/// Repeatedly deletes the vertex of largest degree (sparse side) or largest
/// antidegree (dense side) until the remainder is `eps`-sparse or
/// co-`eps`-sparse respectively.
pub(crate) fn peel(g: &Graph, s: &VertexSet, eps: &Rational, side: Side) -> VertexSet {
    let mut cur = s.clone();
    let verts = s.to_vec();
    let mut deg: Vec<usize> = vec![0; g.n()];
    for &v in &verts {
        let d = g.degree_in(v, s);
        deg[v] = match side {
            Side::Sparse => d,
            Side::Dense => s.len() - 1 - d,
        };
    }
    loop {
        let size = cur.len();
        let (worst, d) = cur
            .iter()
            .map(|v| (v, deg[v]))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .unwrap_or((0, 0));
        if size == 0 || rational::count_le(d, eps, size) {
            return cur;
        }
        cur.remove(worst);
        for v in cur.iter() {
            let adjacent = g.has_edge(worst, v);
            if adjacent == (side == Side::Sparse) {
                deg[v] -= 1;
            }
        }
    }
}

/// Largest `S ⊆ within` with `g[S]` restricted, by subset enumeration in
/// decreasing size.
fn exhaustive(g: &Graph, within: &VertexSet, eps: &Rational) -> VertexSet {
    let verts = within.to_vec();
    let m = verts.len();
    assert!(m <= 30, "exhaustive search needs a small vertex pool");
    let adj: Vec<u32> = verts
        .iter()
        .map(|&u| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &v)| g.has_edge(u, v))
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    for size in (1..=m).rev() {
        // ε|S| as an integer degree cap: d <= ε|S| iff d <= floor(ε|S|)
        let cap = rational::floor_mul(eps, size);
        let mut mask: u32 = (1u32 << size) - 1;
        let limit = 1u64 << m;
        while (mask as u64) < limit {
            if mask_restricted(&adj, mask, size, cap) {
                return VertexSet::from_iter(
                    g.n(),
                    (0..m).filter(|&j| mask >> j & 1 == 1).map(|j| verts[j]),
                );
            }
            // next mask with the same popcount (Gosper's hack)
            let c = mask & mask.wrapping_neg();
            let r = mask.wrapping_add(c);
            if r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    VertexSet::new(g.n())
}

fn mask_restricted(adj: &[u32], mask: u32, size: usize, cap: usize) -> bool {
    let members = || (0..adj.len()).filter(move |&j| mask >> j & 1 == 1);
    let sparse = members().all(|j| (adj[j] & mask).count_ones() as usize <= cap);
    sparse || members().all(|j| size - 1 - (adj[j] & mask).count_ones() as usize <= cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn clique_is_restricted() {
        for n in [5, 30] {
            let g = Graph::complete(n);
            assert_eq!(rodl_restricted_subgraph(&g, &ratio(1, 4), &int(n)).len(), n);
        }
    }

    #[test]
    fn sparse_graph_kept_whole() {
        let edges: Vec<_> = (0..20).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::from_edges(40, &edges).unwrap();
        assert_eq!(rodl_restricted_subgraph(&g, &ratio(1, 4), &int(40)).len(), 40);
    }

    #[test]
    fn c5_exhaustive() {
        // eps = 1/4: a 3-set needs max degree 0 or full; C5 has an edge plus a
        // non-neighbour, so the optimum is 2
        let g = Graph::cycle(5);
        let s = rodl_restricted_subgraph(&g, &ratio(1, 4), &int(5));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn peeling_results_verify() {
        let g = Graph::from_fn(40, |u, v| (u * 7 + v * 3) % 5 == 0);
        let eps = ratio(1, 4);
        let s = rodl_restricted_subgraph(&g, &eps, &int(40));
        assert!(!s.is_empty());
        assert!(is_restricted_within(&g, &s, &eps));
    }
}
