//! Exact answers by exhaustion, for checking the extraction pipelines on
//! small graphs.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// Size limits of the oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Plain enumeration of all vertex subsets.
    pub exhaustive: usize,
    /// Branch-and-bound maximum clique.
    pub branch_and_bound: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            exhaustive: 18,
            branch_and_bound: 64,
        }
    }
}

fn cap(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeCap { n, limit })
    } else {
        Ok(())
    }
}

fn rows(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbours(v).iter().fold(0u64, |m, u| m | 1 << u)).collect()
}

/// Largest clique by branch and bound over 64-bit rows, with a greedy
/// colouring bound.
pub fn max_clique(g: &Graph) -> Result<VertexSet> {
    max_clique_with(g, OracleCaps::default())
}

pub fn max_clique_with(g: &Graph, caps: OracleCaps) -> Result<VertexSet> {
    cap(g.n(), caps.branch_and_bound.min(64))?;
    let adj = rows(g);
    let mut best = 0u64;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    expand(&adj, 0, all, &mut best);
    Ok(VertexSet::from_iter(g.n(), bits(best)))
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// Colour classes of `cand` in order: returns the vertices and their colour
/// numbers, nondecreasing.
fn colour(adj: &[u64], cand: u64) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut left = cand;
    let mut c = 0;
    while left != 0 {
        c += 1;
        let mut avail = left;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            left &= !(1 << v);
            out.push((v, c));
        }
    }
    out
}

fn expand(adj: &[u64], clique: u64, cand: u64, best: &mut u64) {
    let order = colour(adj, cand);
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if clique.count_ones() + c <= best.count_ones() {
            return;
        }
        let next = clique | 1 << v;
        let sub = cand & adj[v];
        if sub == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            expand(adj, next, sub, best);
        }
        cand &= !(1 << v);
    }
}

/// `(largest clique, largest stable set)` by branch and bound on the graph
/// and its complement.
pub fn brute_max_hom(g: &Graph) -> Result<(usize, usize)> {
    Ok((max_clique(g)?.len(), max_clique(&g.complement())?.len()))
}

/// As [`brute_max_hom`], by testing every subset; a cross-check for the
/// branch and bound.
pub fn exhaustive_max_hom(g: &Graph) -> Result<(usize, usize)> {
    cap(g.n(), OracleCaps::default().exhaustive)?;
    let adj = rows(g);
    let n = g.n();
    let (mut clique, mut stable) = (0, 0);
    for s in 0u64..1 << n {
        let size = s.count_ones();
        let (mut is_clique, mut is_stable) = (true, true);
        for v in bits(s) {
            let inside = adj[v] & s;
            is_clique &= inside.count_ones() + 1 == size;
            is_stable &= inside == 0;
        }
        if is_clique {
            clique = clique.max(size as usize);
        }
        if is_stable {
            stable = stable.max(size as usize);
        }
    }
    Ok((clique, stable))
}

/// A largest `S` with `g[S]` or its complement of maximum degree at most
/// `ε |S|`, by testing every subset. Among equal sizes the numerically
/// smallest bitmask wins.
pub fn brute_best_restricted(g: &Graph, eps: &Rational) -> Result<VertexSet> {
    let n = g.n();
    cap(n, OracleCaps::default().exhaustive)?;
    if n == 0 {
        return Ok(VertexSet::new(0));
    }
    let adj = rows(g);
    // floor(ε s) for each size s
    let limit: Vec<u32> = (0..=n).map(|s| rational::floor_mul(eps, s) as u32).collect();
    let mut best = 1u64;
    for s in 1u64..1 << n {
        let size = s.count_ones();
        if size <= best.count_ones() {
            continue;
        }
        let lim = limit[size as usize];
        let (mut sparse, mut dense) = (true, true);
        for v in bits(s) {
            let d = (adj[v] & s).count_ones();
            sparse &= d <= lim;
            dense &= size - 1 - d <= lim;
            if !sparse && !dense {
                break;
            }
        }
        if sparse || dense {
            best = s;
        }
    }
    Ok(VertexSet::from_iter(n, bits(best)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::is_restricted_within;
    use crate::rational::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_named_graphs() {
        assert_eq!(brute_max_hom(&Graph::complete(5)).unwrap(), (5, 1));
        assert_eq!(brute_max_hom(&Graph::cycle(5)).unwrap(), (2, 2));
        assert_eq!(exhaustive_max_hom(&Graph::cycle(5)).unwrap(), (2, 2));
        assert_eq!(brute_max_hom(&Graph::empty(0)).unwrap(), (0, 0));
    }

    #[test]
    fn branch_and_bound_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=14);
            let p = rng.gen_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
            assert_eq!(brute_max_hom(&g).unwrap(), exhaustive_max_hom(&g).unwrap());
            let (c, s) = brute_max_hom(&g).unwrap();
            assert_eq!(brute_max_hom(&g.complement()).unwrap(), (s, c));
            assert!(g.is_clique(&max_clique(&g).unwrap()));
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(exhaustive_max_hom(&Graph::empty(19)), Err(Error::SizeCap { .. })));
        assert!(matches!(brute_max_hom(&Graph::empty(65)), Err(Error::SizeCap { .. })));
        assert_eq!(brute_max_hom(&Graph::empty(64)).unwrap(), (1, 64));
    }

    #[test]
    fn best_restricted_is_whole_graph_when_possible() {
        assert_eq!(brute_best_restricted(&Graph::complete(9), &ratio(1, 8)).unwrap().len(), 9);
        assert_eq!(brute_best_restricted(&Graph::cycle(8), &ratio(1, 4)).unwrap().len(), 8);
        let s = brute_best_restricted(&Graph::path(7), &ratio(1, 8)).unwrap();
        assert!(is_restricted_within(&Graph::path(7), &s, &ratio(1, 8)));
        assert_eq!(s.len(), 4);
    }
}
