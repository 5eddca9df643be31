//! Complete blockades from small anticonnected components.

use crate::bitset::VertexSet;
use crate::certificate::Blockade;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Merges parts of a partition of an `n`-vertex set (each part smaller than
/// `n / k`) until every part but the smallest has at least `n / (2k)`
/// vertices, then drops the smallest. Two parts below `n / (2k)` always have
/// a union below `n / k`, so merges keep every part below `n / k`; the
/// survivors number at least `k` because `n` vertices do not fit in `k` parts
/// below `n / k`.
///
/// Parts come back in increasing size order (lowest first vertex on ties).
pub(crate) fn merge_small_parts(mut parts: Vec<VertexSet>, n: usize, k: usize) -> Vec<VertexSet> {
    // |S| < n / (2k)  <=>  2k|S| < n
    let small = |s: &VertexSet| 2 * k * s.len() < n;
    loop {
        parts.sort_by_key(|p| (p.len(), p.first().unwrap_or(usize::MAX)));
        let Some(i) = (1..parts.len()).find(|&i| small(&parts[i])) else {
            break;
        };
        let absorbed = parts.remove(i - 1);
        parts[i - 1].union_with(&absorbed);
    }
    if !parts.is_empty() {
        parts.remove(0);
    }
    parts
}

/// A complete `(k, |g|/k^2)`-blockade, given that every anticonnected
/// component of `g` has fewer than `|g| / k` vertices.
pub fn complete_blockade_from_anticomponents(g: &Graph, k: usize) -> Result<Blockade> {
    complete_blockade_within(g, &g.vertices(), k)
}

/// As [`complete_blockade_from_anticomponents`] for the induced subgraph
/// `g[set]`.
pub fn complete_blockade_within(g: &Graph, set: &VertexSet, k: usize) -> Result<Blockade> {
    if k < 2 {
        return Err(Error::precondition(format!("k = {k}, need k >= 2")));
    }
    let n = set.len();
    let parts = g.anticomponents_within(set);
    if let Some(big) = parts.iter().find(|p| p.len() * k >= n) {
        return Err(Error::precondition_with(
            format!(
                "anticonnected component of size {} is not below |G|/k = {n}/{k}",
                big.len()
            ),
            big.to_vec(),
        ));
    }
    let blocks = merge_small_parts(parts, n, k);
    if blocks.len() < k || blocks.iter().any(|b| b.len() * k * k < n) {
        return Err(Error::internal(format!(
            "merged partition has {} parts, expected at least {k} of size >= {n}/{}",
            blocks.len(),
            k * k
        )));
    }
    Blockade::new(blocks)
}
