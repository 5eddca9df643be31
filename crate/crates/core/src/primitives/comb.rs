//! Either few vertices of `B` see `A`, or there is a comb with apexes in `A`
//! and teeth in `B`.
//!
//! The construction is not canonical; whatever it returns is checked against
//! the disjunction before it leaves this module.

use crate::bitset::VertexSet;
use crate::certificate::Comb;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::primitives::covering::covered_by;
use crate::rational::Rational;

use num_bigint::BigInt;

/// Apex sets up to this size are searched exhaustively when the greedy
/// construction comes up empty.
pub const EXHAUSTIVE_APEX_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombOutcome {
    /// The vertices of `B` with a neighbour in `A`; at most `20 sqrt(|B| Δ)`.
    SmallCover(VertexSet),
    /// A `(k, |B|/k^2)`-comb with apexes in `A` and blocks in `B`.
    CombFound { comb: Comb, k: usize },
}

/// `|covered| <= 20 sqrt(|b| Δ)`, decided by squaring.
pub fn small_cover_holds(covered: usize, b: usize, delta: &Rational) -> bool {
    let lhs = BigInt::from(covered) * BigInt::from(covered) * delta.denom();
    let rhs = BigInt::from(400u32) * BigInt::from(b) * delta.numer();
    lhs <= rhs
}

/// `width >= |b| / k^2`.
pub fn comb_width_ok(width: usize, k: usize, b: usize) -> bool {
    width * k * k >= b
}

pub fn comb_or_sparse_cover(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    delta: &Rational,
) -> Result<CombOutcome> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::precondition("A and B must be nonempty"));
    }
    if a.intersects(b) {
        return Err(Error::precondition_with(
            "A and B must be disjoint",
            a.intersection(b).to_vec(),
        ));
    }
    if *delta <= Rational::from_integer(0.into()) {
        return Err(Error::precondition("Δ must be positive"));
    }
    if let Some(v) = a
        .iter()
        .find(|&v| Rational::from_integer(g.degree_in(v, b).into()) > *delta)
    {
        return Err(Error::precondition_with(
            format!("apex candidate {v} has {} neighbours in B, above Δ", g.degree_in(v, b)),
            vec![v],
        ));
    }

    let found = greedy_comb(g, a, b).or_else(|| {
        if a.len() <= EXHAUSTIVE_APEX_LIMIT {
            exhaustive_comb(g, a, b)
        } else {
            None
        }
    });
    if let Some(comb) = found {
        let k = comb.len();
        if !comb.violations(g).is_empty() || !comb_width_ok(comb.width(), k, b.len()) {
            return Err(Error::internal("constructed comb failed its own check"));
        }
        return Ok(CombOutcome::CombFound { comb, k });
    }
    let covered = covered_by(g, a, b);
    if small_cover_holds(covered.len(), b.len(), delta) {
        return Ok(CombOutcome::SmallCover(covered));
    }
    Err(Error::internal(format!(
        "{} vertices of B see A, above 20 sqrt(|B| Δ), but no comb was found",
        covered.len()
    )))
}

/// Private neighbourhoods: `N(a_i) ∩ B` minus every other apex's neighbours.
pub(crate) fn private_blocks(g: &Graph, apexes: &[usize], b: &VertexSet) -> Vec<VertexSet> {
    apexes
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let mut block = g.neighbours(ai).intersection(b);
            for (j, &aj) in apexes.iter().enumerate() {
                if i != j {
                    block.difference_with(g.neighbours(aj));
                }
            }
            block
        })
        .collect()
}

/// Adds apexes one at a time, each time taking the candidate with the most
/// `B`-neighbours not yet seen by a chosen apex (lowest index on ties). After
/// each pick the blocks are the private neighbourhoods, and the longest
/// prefix meeting the `|B|/k^2` width is kept. Stops once the smallest block
/// drops below `|B| / (k+1)^2`, since adding apexes only shrinks blocks.
fn greedy_comb(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Comb> {
    let n_b = b.len();
    let mut apexes: Vec<usize> = Vec::new();
    let mut seen = VertexSet::new(g.n());
    let mut best: Option<Vec<usize>> = None;
    let mut candidates: Vec<usize> = a.iter().filter(|&v| g.neighbours(v).intersects(b)).collect();
    loop {
        let pick = candidates
            .iter()
            .enumerate()
            .map(|(ci, &c)| {
                let fresh = g.neighbours(c).intersection(b).difference(&seen).len();
                (fresh, std::cmp::Reverse(c), ci)
            })
            .max();
        let Some((fresh, std::cmp::Reverse(c), ci)) = pick else {
            break;
        };
        if fresh == 0 {
            break;
        }
        candidates.remove(ci);
        apexes.push(c);
        seen.union_with(&g.neighbours(c).intersection(b));
        let k = apexes.len();
        let min = private_blocks(g, &apexes, b).iter().map(VertexSet::len).min().unwrap_or(0);
        if min > 0 && comb_width_ok(min, k, n_b) {
            best = Some(apexes.clone());
        }
        if min * (k + 1) * (k + 1) < n_b {
            break;
        }
    }
    let apexes = best?;
    let blocks = private_blocks(g, &apexes, b);
    Comb::new(apexes, blocks).ok()
}

/// Tries every apex subset, largest first, returning the first whose private
/// blocks meet the width bound.
pub(crate) fn exhaustive_comb(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Comb> {
    let pool = a.to_vec();
    let m = pool.len();
    assert!(m < 32, "exhaustive apex search needs a small apex pool");
    let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
    masks.sort_by_key(|&mask| (std::cmp::Reverse(mask.count_ones()), mask));
    for mask in masks {
        let apexes: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pool[i]).collect();
        let blocks = private_blocks(g, &apexes, b);
        let width = blocks.iter().map(VertexSet::len).min().unwrap_or(0);
        if width > 0 && comb_width_ok(width, apexes.len(), b.len()) {
            return Comb::new(apexes, blocks).ok();
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn single_apex_comb() {
        let edges: Vec<_> = (1..=25).map(|j| (0, j)).collect();
        let g = Graph::from_edges(26, &edges).unwrap();
        let a = g.vertex_set([0]);
        let b = g.vertex_set(1..26);
        match comb_or_sparse_cover(&g, &a, &b, &int(25)).unwrap() {
            CombOutcome::CombFound { comb, k } => {
                assert_eq!(k, 1);
                assert_eq!(comb.width(), 25);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn no_edges_gives_empty_cover() {
        let g = Graph::empty(10);
        let a = g.vertex_set(0..3);
        let b = g.vertex_set(3..10);
        assert_eq!(
            comb_or_sparse_cover(&g, &a, &b, &int(1)).unwrap(),
            CombOutcome::SmallCover(VertexSet::new(10))
        );
    }

    #[test]
    fn degree_above_delta_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2)]).unwrap();
        let r = comb_or_sparse_cover(&g, &g.vertex_set([0]), &g.vertex_set([1, 2, 3]), &ratio(3, 2));
        assert!(matches!(r, Err(Error::PreconditionViolated { .. })));
    }

    #[test]
    fn disjoint_stars_form_a_comb() {
        // apexes 0..4, each with 4 private teeth
        let mut edges = Vec::new();
        for i in 0..4 {
            for t in 0..4 {
                edges.push((i, 4 + 4 * i + t));
            }
        }
        let g = Graph::from_edges(20, &edges).unwrap();
        let a = g.vertex_set(0..4);
        let b = g.vertex_set(4..20);
        match comb_or_sparse_cover(&g, &a, &b, &int(4)).unwrap() {
            CombFound { comb, k } => {
                assert_eq!(k, 4);
                assert!(comb.violations(&g).is_empty());
                assert!(comb_width_ok(comb.width(), k, 16));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    use CombOutcome::CombFound;

    #[test]
    fn squared_bound_is_exact() {
        // 20 sqrt(4 * 1) = 40
        assert!(small_cover_holds(40, 4, &int(1)));
        assert!(!small_cover_holds(41, 4, &int(1)));
    }
}
