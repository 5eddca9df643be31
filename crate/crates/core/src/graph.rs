//! Dense simple graphs with one packed adjacency row per vertex.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Default vertex limit; every operation in the crate is sized for graphs up
/// to this many vertices.
pub const DEFAULT_MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![VertexSet::new(n); n],
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Complete multipartite graph with the given part sizes; parts are
    /// consecutive index ranges.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and graphs above [`DEFAULT_MAX_VERTICES`]. Parallel edges
    /// collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::from_edges_with_limit(n, edges, DEFAULT_MAX_VERTICES)
    }

    pub fn from_edges_with_limit(n: usize, edges: &[(usize, usize)], limit: usize) -> Result<Self> {
        if n > limit {
            return Err(Error::SizeCap { n, limit });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::precondition_with(
                    format!("edge ({u}, {v}) outside vertex range 0..{n}"),
                    vec![u, v],
                ));
            }
            if u == v {
                return Err(Error::precondition_with(format!("loop at vertex {u}"), vec![u]));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// Number of neighbours of `v` inside `set`.
    #[inline]
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        self.rows[v].intersection_len(set)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, items: I) -> VertexSet {
        VertexSet::from_iter(self.n, items)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.rows.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Maximum degree of `g[set]` together with the lowest vertex attaining it.
    pub fn max_degree_within(&self, set: &VertexSet) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in set {
            let d = self.degree_in(v, set);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best
    }

    /// Maximum non-degree of `g[set]` (degree in the complement of `g[set]`).
    pub fn max_antidegree_within(&self, set: &VertexSet) -> Option<(usize, usize)> {
        let size = set.len();
        let mut best: Option<(usize, usize)> = None;
        for v in set {
            let d = size - 1 - self.degree_in(v, set);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.degree_in(v, set)).sum::<usize>() / 2
    }

    /// Number of edges between disjoint sets `a` and `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small.iter().map(|v| self.degree_in(v, large)).sum()
    }

    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = self.rows[v].complement();
            row.remove(v);
            rows.push(row);
        }
        Graph {
            n: self.n,
            rows,
            labels: self.labels.clone(),
        }
    }

    /// The subgraph induced on `set`, relabelled to `0..|set|` in increasing
    /// order, plus the map from new indices back to host vertices.
    pub fn induced_subgraph(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let map = set.to_vec();
        let m = map.len();
        let mut g = Graph::empty(m);
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, map)
    }

    /// Connected components of `g[set]`, each listed once, ordered by lowest
    /// vertex.
    pub fn components_within(&self, set: &VertexSet) -> Vec<VertexSet> {
        self.search_components(set, false)
    }

    /// Anticonnected components of `g[set]`: the components of the complement
    /// of `g[set]`, found by BFS over complemented rows without building the
    /// complement.
    pub fn anticomponents_within(&self, set: &VertexSet) -> Vec<VertexSet> {
        self.search_components(set, true)
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    pub fn anticomponents(&self) -> Vec<VertexSet> {
        self.anticomponents_within(&self.vertices())
    }

    fn search_components(&self, set: &VertexSet, complemented: bool) -> Vec<VertexSet> {
        let mut unvisited = set.clone();
        let mut out = Vec::new();
        while let Some(start) = unvisited.first() {
            unvisited.remove(start);
            let mut comp = VertexSet::singleton(self.n, start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                let next = if complemented {
                    unvisited.difference(&self.rows[v])
                } else {
                    unvisited.intersection(&self.rows[v])
                };
                if next.is_empty() {
                    continue;
                }
                unvisited.difference_with(&next);
                comp.union_with(&next);
                frontier.extend(next.iter());
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected_within(&self, set: &VertexSet) -> bool {
        self.components_within(set).len() <= 1
    }

    pub fn is_anticonnected_within(&self, set: &VertexSet) -> bool {
        self.anticomponents_within(set).len() <= 1
    }

    /// True when every vertex of `a` is adjacent to every vertex of `b`.
    pub fn is_complete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(&self.rows[v]))
    }

    /// True when there is no edge between `a` and `b`.
    pub fn is_anticomplete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| !self.rows[v].intersects(b))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.degree_in(v, set) + 1 == set.len())
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| !self.rows[v].intersects(set))
    }

    /// Checks symmetry and loop-freeness; used by tests and by ingestion.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|u| {
            !self.rows[u].contains(u) && self.rows[u].iter().all(|v| self.rows[v].contains(u))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_p5_is_the_house() {
        // path 1-2-3-4-5, zero-based
        let house = Graph::path(5).complement();
        let expected = vec![(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)];
        assert_eq!(house.edges(), expected);
    }

    #[test]
    fn complement_of_empty_four_is_k4() {
        assert_eq!(Graph::empty(4).complement(), Graph::complete(4));
    }

    #[test]
    fn anticomponents_of_k33_are_the_sides() {
        let g = Graph::complete_multipartite(&[3, 3]);
        let parts: Vec<_> = g.anticomponents().iter().map(VertexSet::to_vec).collect();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn anticomponents_of_trivial_graphs() {
        assert_eq!(Graph::complete(5).anticomponents().len(), 5);
        assert_eq!(Graph::empty(5).anticomponents().len(), 1);
        assert!(Graph::empty(0).anticomponents().is_empty());
    }

    #[test]
    fn induced_subgraph_cases() {
        let k5 = Graph::complete(5);
        let (k3, map) = k5.induced_subgraph(&VertexSet::from_iter(5, [0, 2, 4]));
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 4]);
        let (e, map) = k5.induced_subgraph(&VertexSet::new(5));
        assert_eq!(e.n(), 0);
        assert!(map.is_empty());
        let c5 = Graph::cycle(5);
        assert_eq!(c5.induced_subgraph(&c5.vertices()).0, c5);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(matches!(
            Graph::from_edges_with_limit(10, &[], 5),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn degree_bookkeeping() {
        let g = Graph::cycle(6);
        assert!(g.check_invariants());
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.max_degree_within(&g.vertices()), Some((2, 0)));
        let s = g.vertex_set([0, 1, 2]);
        assert_eq!(g.edges_within(&s), 2);
        assert_eq!(g.edges_between(&s, &g.vertex_set([3, 4, 5])), 2);
    }
}
