//! Blockades, pair relations, combs and layouts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::predicates;
use crate::rational::{self, Rational};

/// An ordered list of pairwise-disjoint vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blockade {
    blocks: Vec<VertexSet>,
}

impl Blockade {
    /// Fails if two blocks share a vertex or the blocks live in different
    /// universes.
    pub fn new(blocks: Vec<VertexSet>) -> Result<Self> {
        if let Some(first) = blocks.first() {
            if blocks.iter().any(|b| b.universe() != first.universe()) {
                return Err(Error::precondition("blocks over different vertex ranges"));
            }
        }
        let mut seen = blocks.first().map(|b| VertexSet::new(b.universe()));
        for b in &blocks {
            let seen = seen.as_mut().expect("nonempty block list");
            if seen.intersects(b) {
                return Err(Error::precondition_with(
                    "blocks are not disjoint",
                    seen.intersection(b).to_vec(),
                ));
            }
            seen.union_with(b);
        }
        Ok(Blockade { blocks })
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<VertexSet> {
        self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Smallest block size (0 for the empty blockade).
    pub fn width(&self) -> usize {
        self.blocks.iter().map(VertexSet::len).min().unwrap_or(0)
    }

    pub fn union(&self, universe: usize) -> VertexSet {
        let mut all = VertexSet::new(universe);
        for b in &self.blocks {
            all.union_with(b);
        }
        all
    }

    /// Keeps the `k` largest blocks (ties: lower index first), in their
    /// original order.
    pub fn largest(&self, k: usize) -> Blockade {
        let mut idx: Vec<usize> = (0..self.blocks.len()).collect();
        idx.sort_by_key(|&i| (std::cmp::Reverse(self.blocks[i].len()), i));
        idx.truncate(k);
        idx.sort_unstable();
        Blockade {
            blocks: idx.into_iter().map(|i| self.blocks[i].clone()).collect(),
        }
    }

    /// Every block cut down to its `size` lowest vertices.
    pub fn trimmed(&self, size: usize) -> Blockade {
        Blockade {
            blocks: self.blocks.iter().map(|b| b.truncated(size)).collect(),
        }
    }

    /// Maps blocks of an induced subgraph back to host vertices.
    pub fn lifted(&self, map: &[usize], host_n: usize) -> Blockade {
        Blockade {
            blocks: self
                .blocks
                .iter()
                .map(|b| VertexSet::from_iter(host_n, b.iter().map(|v| map[v])))
                .collect(),
        }
    }
}

/// How a pair of disjoint blocks `(B_i, B_j)`, `i < j`, sits in the host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Complete,
    Anticomplete,
    /// `B_j` is `x`-sparse to `B_i` (directed; implies weakly sparse).
    Sparse,
    /// Edge density at most `x`, but not sparse in the directed sense.
    WeaklySparse,
    Mixed,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Complete => "complete",
            Relation::Anticomplete => "anticomplete",
            Relation::Sparse => "sparse",
            Relation::WeaklySparse => "weakly_sparse",
            Relation::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Option<Relation> {
        Some(match s {
            "complete" => Relation::Complete,
            "anticomplete" => Relation::Anticomplete,
            "sparse" => Relation::Sparse,
            "weakly_sparse" => Relation::WeaklySparse,
            "mixed" => Relation::Mixed,
            _ => return None,
        })
    }

    pub fn is_pure(self) -> bool {
        matches!(self, Relation::Complete | Relation::Anticomplete)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exact tag for one ordered pair; complete and anticomplete take precedence,
/// then directed sparseness, then density, then mixed.
pub fn classify_pair(g: &Graph, bi: &VertexSet, bj: &VertexSet, x: &Rational) -> Relation {
    if g.is_complete_to(bi, bj) {
        return Relation::Complete;
    }
    if g.is_anticomplete_to(bi, bj) {
        return Relation::Anticomplete;
    }
    let bound = rational::floor_mul(x, bi.len());
    if bj.iter().all(|v| g.degree_in(v, bi) <= bound) {
        return Relation::Sparse;
    }
    if rational::count_le(g.edges_between(bi, bj), x, bi.len() * bj.len()) {
        return Relation::WeaklySparse;
    }
    Relation::Mixed
}

/// Relation tags for every pair `i < j` of a blockade at threshold `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelationMatrix {
    x: Rational,
    k: usize,
    tags: Vec<Relation>,
}

impl PairRelationMatrix {
    pub fn from_tags(x: Rational, k: usize, tags: Vec<Relation>) -> Result<Self> {
        if tags.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::precondition(format!(
                "{} tags for {k} blocks",
                tags.len()
            )));
        }
        Ok(PairRelationMatrix { x, k, tags })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    fn index(&self, i: usize, j: usize) -> usize {
        assert!(i < j && j < self.k, "pair ({i}, {j}) out of range");
        // rows 0..i hold (k-1) + (k-2) + ... entries
        i * (2 * self.k - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> Relation {
        self.tags[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, r: Relation) {
        let idx = self.index(i, j);
        self.tags[idx] = r;
    }

    /// `(i, j, tag)` for every `i < j`, row by row.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Relation)> + '_ {
        (0..self.k).flat_map(move |i| (i + 1..self.k).map(move |j| (i, j, self.get(i, j))))
    }
}

pub fn classify_pairs(g: &Graph, b: &Blockade, x: &Rational) -> PairRelationMatrix {
    let k = b.len();
    let mut tags = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            tags.push(classify_pair(g, &b.blocks[i], &b.blocks[j], x));
        }
    }
    PairRelationMatrix {
        x: x.clone(),
        k,
        tags,
    }
}

/// The blockade kinds a certificate can claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockadeKind {
    Pure,
    Complete,
    Anticomplete,
    /// `B_j` is `x`-sparse to `B_i` for all `i < j`.
    XSparse,
    /// Every pair complete or weakly `x`-sparse.
    Semisparse,
}

impl BlockadeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockadeKind::Pure => "pure",
            BlockadeKind::Complete => "complete",
            BlockadeKind::Anticomplete => "anticomplete",
            BlockadeKind::XSparse => "x_sparse",
            BlockadeKind::Semisparse => "semisparse",
        }
    }

    pub fn parse(s: &str) -> Option<BlockadeKind> {
        Some(match s {
            "pure" => BlockadeKind::Pure,
            "complete" => BlockadeKind::Complete,
            "anticomplete" => BlockadeKind::Anticomplete,
            "x_sparse" => BlockadeKind::XSparse,
            "semisparse" => BlockadeKind::Semisparse,
            _ => return None,
        })
    }

    /// Whether a pair `(bi, bj)`, `i < j`, meets this kind, decided directly
    /// from the graph rather than from tags.
    pub fn pair_holds(self, g: &Graph, bi: &VertexSet, bj: &VertexSet, x: &Rational) -> bool {
        match self {
            BlockadeKind::Pure => g.is_complete_to(bi, bj) || g.is_anticomplete_to(bi, bj),
            BlockadeKind::Complete => g.is_complete_to(bi, bj),
            BlockadeKind::Anticomplete => g.is_anticomplete_to(bi, bj),
            BlockadeKind::XSparse => {
                predicates::is_sparse_to(g, bj, bi, x).unwrap_or(false)
            }
            BlockadeKind::Semisparse => {
                g.is_complete_to(bi, bj)
                    || predicates::is_weakly_sparse(g, bi, bj, x).unwrap_or(false)
            }
        }
    }
}

impl fmt::Display for BlockadeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Apexes `a_i` with blocks `B_i`: `a_i` complete to `B_i`, anticomplete to
/// every other block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comb {
    apexes: Vec<usize>,
    blocks: Vec<VertexSet>,
}

impl Comb {
    pub fn new(apexes: Vec<usize>, blocks: Vec<VertexSet>) -> Result<Self> {
        if apexes.len() != blocks.len() {
            return Err(Error::precondition(format!(
                "{} apexes but {} blocks",
                apexes.len(),
                blocks.len()
            )));
        }
        Ok(Comb { apexes, blocks })
    }

    pub fn apexes(&self) -> &[usize] {
        &self.apexes
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.apexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.apexes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.blocks.iter().map(VertexSet::len).min().unwrap_or(0)
    }

    /// Every failed comb condition, as `(clause, witness)`.
    pub fn violations(&self, g: &Graph) -> Vec<(String, Vec<usize>)> {
        let mut out = Vec::new();
        let n = g.n();
        let mut used = VertexSet::new(n);
        for &a in &self.apexes {
            if a >= n || !used.insert(a) {
                out.push(("apexes distinct".to_string(), vec![a]));
            }
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if used.intersects(b) {
                out.push((
                    format!("block {i} disjoint from apexes and other blocks"),
                    used.intersection(b).to_vec(),
                ));
            }
            used.union_with(b);
        }
        for (i, &a) in self.apexes.iter().enumerate() {
            if a >= n {
                continue;
            }
            for (j, b) in self.blocks.iter().enumerate() {
                let nbrs = g.neighbours(a).intersection(b);
                if i == j && nbrs.len() != b.len() {
                    let miss = b.difference(g.neighbours(a)).first().unwrap_or(a);
                    out.push((format!("apex {i} complete to block {i}"), vec![a, miss]));
                } else if i != j && !nbrs.is_empty() {
                    let hit = nbrs.first().unwrap_or(a);
                    out.push((format!("apex {i} anticomplete to block {j}"), vec![a, hit]));
                }
            }
        }
        out
    }
}

/// A pattern graph `J` with one nonempty part per vertex of `J`, plus the
/// running counts of decided and wrong pairs.
///
/// A pair of host vertices is undecided when both lie in a common part and
/// decided otherwise (including pairs touching vertices outside every part),
/// so splitting a part can only add decided pairs. A decided pair is wrong
/// when its ends lie in parts `i != j`, they are adjacent, and `ij` is not an
/// edge of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    host_n: usize,
    pattern: Graph,
    parts: Vec<VertexSet>,
    decided: u64,
    wrong: u64,
}

impl Layout {
    /// The trivial layout: one pattern vertex owning every host vertex.
    pub fn trivial(g: &Graph) -> Layout {
        Layout {
            host_n: g.n(),
            pattern: Graph::empty(1),
            parts: vec![g.vertices()],
            decided: 0,
            wrong: 0,
        }
    }

    /// Builds a layout and computes both counts from scratch.
    pub fn new(g: &Graph, pattern: Graph, parts: Vec<VertexSet>) -> Result<Layout> {
        if pattern.n() != parts.len() {
            return Err(Error::precondition("one part per pattern vertex required"));
        }
        if parts.iter().any(VertexSet::is_empty) {
            return Err(Error::precondition("layout parts must be nonempty"));
        }
        Blockade::new(parts.clone())?;
        let (decided, wrong) = count_pairs(g, &pattern, &parts);
        Ok(Layout {
            host_n: g.n(),
            pattern,
            parts,
            decided,
            wrong,
        })
    }

    /// Assembles a layout with caller-supplied counts (used when reading a
    /// certificate; the verifier recounts).
    pub fn with_counts(
        host_n: usize,
        pattern: Graph,
        parts: Vec<VertexSet>,
        decided: u64,
        wrong: u64,
    ) -> Layout {
        Layout {
            host_n,
            pattern,
            parts,
            decided,
            wrong,
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn decided(&self) -> u64 {
        self.decided
    }

    pub fn wrong(&self) -> u64 {
        self.wrong
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the largest part, lowest index on ties.
    pub fn largest_part(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.parts.iter().enumerate() {
            if p.len() > self.parts[best].len() {
                best = i;
            }
        }
        best
    }

    /// Replaces part `idx` by `pieces`, substituting the pattern graph `k`
    /// (on `pieces.len()` vertices) for pattern vertex `idx`. The new pattern
    /// vertices take indices `idx, len, len+1, ...` so untouched parts keep
    /// their positions. Counts are updated incrementally: the new decided
    /// pairs are those inside the old part but not inside one piece, and the
    /// new wrong pairs are edges between pieces that `k` marks non-adjacent.
    pub fn substitute(&self, g: &Graph, idx: usize, pieces: Vec<VertexSet>, k: &Graph) -> Layout {
        assert_eq!(pieces.len(), k.n(), "one piece per substituted vertex");
        assert!(!pieces.is_empty(), "substitution needs at least one piece");
        let old = &self.parts[idx];
        let old_pairs = choose2(old.len());
        let kept_pairs: u64 = pieces.iter().map(|p| choose2(p.len())).sum();
        let mut added_wrong = 0u64;
        for p in 0..pieces.len() {
            for q in p + 1..pieces.len() {
                if !k.has_edge(p, q) {
                    added_wrong += g.edges_between(&pieces[p], &pieces[q]) as u64;
                }
            }
        }
        // wrong pairs touching the old part whose endpoint left every part
        let mut kept = VertexSet::new(self.host_n);
        for p in &pieces {
            kept.union_with(p);
        }
        let dropped = old.difference(&kept);
        let mut lost_wrong = 0u64;
        if !dropped.is_empty() {
            for (j, part) in self.parts.iter().enumerate() {
                if j != idx && !self.pattern.has_edge(idx, j) {
                    lost_wrong += g.edges_between(&dropped, part) as u64;
                }
            }
        }

        let m = self.parts.len();
        let new_n = m + pieces.len() - 1;
        // position of each piece in the new pattern
        let slot = |p: usize| if p == 0 { idx } else { m + p - 1 };
        let mut pattern = Graph::empty(new_n);
        for u in 0..m {
            for v in u + 1..m {
                if u != idx && v != idx && self.pattern.has_edge(u, v) {
                    pattern.add_edge(u, v);
                }
            }
        }
        for p in 0..pieces.len() {
            for j in 0..m {
                if j != idx && self.pattern.has_edge(idx, j) {
                    pattern.add_edge(slot(p), j);
                }
            }
            for q in p + 1..pieces.len() {
                if k.has_edge(p, q) {
                    pattern.add_edge(slot(p), slot(q));
                }
            }
        }
        let mut parts = self.parts.clone();
        let mut pieces = pieces.into_iter();
        parts[idx] = pieces.next().expect("at least one piece");
        parts.extend(pieces);
        Layout {
            host_n: self.host_n,
            pattern,
            parts,
            decided: self.decided + old_pairs - kept_pairs,
            wrong: self.wrong + added_wrong - lost_wrong,
        }
    }

    /// Counts recomputed from scratch, for double-entry checks.
    pub fn recount(&self, g: &Graph) -> (u64, u64) {
        count_pairs(g, &self.pattern, &self.parts)
    }

    /// `wrong <= x * decided`, exactly.
    pub fn wrong_within(&self, x: &Rational) -> bool {
        let lhs = num_bigint::BigInt::from(self.wrong) * x.denom();
        let rhs = num_bigint::BigInt::from(self.decided) * x.numer();
        lhs <= rhs
    }

    /// Pairs `(i, j)` with `ij` in `J` whose parts are not complete in `g`.
    pub fn incomplete_pattern_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.pattern
            .edges()
            .into_iter()
            .filter(|&(i, j)| !g.is_complete_to(&self.parts[i], &self.parts[j]))
            .collect()
    }
}

fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

fn count_pairs(g: &Graph, pattern: &Graph, parts: &[VertexSet]) -> (u64, u64) {
    let undecided: u64 = parts.iter().map(|p| choose2(p.len())).sum();
    let decided = choose2(g.n()) - undecided;
    let mut wrong = 0u64;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !pattern.has_edge(i, j) {
                wrong += g.edges_between(&parts[i], &parts[j]) as u64;
            }
        }
    }
    (decided, wrong)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn matching(k: usize) -> (Graph, Blockade) {
        let edges: Vec<_> = (0..k).map(|i| (i, i + k)).collect();
        let g = Graph::from_edges(2 * k, &edges).unwrap();
        let b = Blockade::new(vec![g.vertex_set(0..k), g.vertex_set(k..2 * k)]).unwrap();
        (g, b)
    }

    #[test]
    fn basic_tags() {
        let g = Graph::empty(4);
        let b = Blockade::new(vec![g.vertex_set([0, 1]), g.vertex_set([2, 3])]).unwrap();
        assert_eq!(classify_pairs(&g, &b, &ratio(1, 2)).get(0, 1), Relation::Anticomplete);
        let g = Graph::complete(4);
        assert_eq!(classify_pairs(&g, &b, &ratio(1, 2)).get(0, 1), Relation::Complete);
    }

    #[test]
    fn matching_is_sparse_at_one_eighth() {
        let (g, b) = matching(8);
        let m = classify_pairs(&g, &b, &ratio(1, 8));
        assert_eq!(m.get(0, 1), Relation::Sparse);
        assert!(BlockadeKind::Semisparse.pair_holds(&g, &b.blocks()[0], &b.blocks()[1], &ratio(1, 8)));
        assert_eq!(classify_pairs(&g, &b, &ratio(1, 9)).get(0, 1), Relation::Mixed);
    }

    #[test]
    fn sparse_tag_is_directed() {
        // one vertex of B_1 sees all of B_0; B_0 sees at most one of B_1
        let g = Graph::from_edges(6, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        let b = Blockade::new(vec![g.vertex_set([0, 1, 2]), g.vertex_set([3, 4, 5])]).unwrap();
        let x = ratio(1, 3);
        assert_eq!(classify_pairs(&g, &b, &x).get(0, 1), Relation::WeaklySparse);
        let rev = Blockade::new(vec![g.vertex_set([3, 4, 5]), g.vertex_set([0, 1, 2])]).unwrap();
        assert_eq!(classify_pairs(&g, &rev, &x).get(0, 1), Relation::Sparse);
    }

    #[test]
    fn matrix_indexing_covers_every_pair_once() {
        let g = Graph::empty(5);
        let b = Blockade::new((0..5).map(|v| g.vertex_set([v])).collect()).unwrap();
        let m = classify_pairs(&g, &b, &ratio(1, 2));
        let pairs: Vec<_> = m.pairs().map(|(i, j, _)| (i, j)).collect();
        assert_eq!(pairs.len(), 10);
        let mut m2 = m.clone();
        m2.set(2, 4, Relation::Mixed);
        assert_eq!(m2.get(2, 4), Relation::Mixed);
        assert_eq!(m2.pairs().filter(|p| p.2 == Relation::Mixed).count(), 1);
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let g = Graph::empty(4);
        assert!(Blockade::new(vec![g.vertex_set([0, 1]), g.vertex_set([1, 2])]).is_err());
    }

    #[test]
    fn comb_conditions() {
        // apex 0 -> {2,3}, apex 1 -> {4,5}
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let comb = Comb::new(vec![0, 1], vec![g.vertex_set([2, 3]), g.vertex_set([4, 5])]).unwrap();
        assert!(comb.violations(&g).is_empty());
        let bad = Comb::new(vec![0, 1], vec![g.vertex_set([2, 4]), g.vertex_set([5])]).unwrap();
        assert!(!bad.violations(&g).is_empty());
    }

    #[test]
    fn layout_substitution_keeps_counts_consistent() {
        let g = Graph::complete_multipartite(&[2, 2, 2]);
        let start = Layout::trivial(&g);
        assert_eq!(start.recount(&g), (0, 0));
        let pieces = vec![g.vertex_set([0, 1]), g.vertex_set([2, 3]), g.vertex_set([4])];
        let next = start.substitute(&g, 0, pieces, &Graph::complete(3));
        assert_eq!((next.decided(), next.wrong()), next.recount(&g));
        assert!(next.incomplete_pattern_edges(&g).is_empty());
        // vertex 5 left every part: its pairs count as decided
        assert_eq!(next.decided(), 15 - 2);
        let split = next.substitute(&g, 0, vec![g.vertex_set([0]), g.vertex_set([1])], &Graph::empty(2));
        assert_eq!((split.decided(), split.wrong()), split.recount(&g));
        assert_eq!(split.wrong(), 0);
        assert_eq!(split.len(), 4);
    }
}
