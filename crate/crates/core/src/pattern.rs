//! Small induced patterns and exhaustive induced-copy search.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest pattern the search accepts.
pub const MAX_PATTERN_VERTICES: usize = 8;

/// A graph on at most eight vertices used as an induced-subgraph pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    name: String,
    graph: Graph,
}

impl PatternGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self> {
        if graph.n() > MAX_PATTERN_VERTICES {
            return Err(Error::precondition(format!(
                "pattern has {} vertices, at most {MAX_PATTERN_VERTICES} supported",
                graph.n()
            )));
        }
        Ok(PatternGraph {
            name: name.into(),
            graph,
        })
    }

    /// The four-vertex path 0-1-2-3.
    pub fn p4() -> Self {
        Self::builtin("P4", Graph::path(4))
    }

    /// The five-vertex path 0-1-2-3-4.
    pub fn p5() -> Self {
        Self::builtin("P5", Graph::path(5))
    }

    /// The house: complement of the five-vertex path.
    pub fn house() -> Self {
        Self::builtin("house", Graph::path(5).complement())
    }

    pub fn c5() -> Self {
        Self::builtin("C5", Graph::cycle(5))
    }

    fn builtin(name: &str, graph: Graph) -> Self {
        PatternGraph {
            name: name.to_string(),
            graph,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn complement(&self) -> PatternGraph {
        PatternGraph {
            name: format!("co-{}", self.name),
            graph: self.graph.complement(),
        }
    }
}

/// True when `map` is an injective map `V(h) -> V(g)` preserving both edges
/// and non-edges.
pub fn is_induced_copy(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if map[i] == map[j] || h.has_edge(i, j) != g.has_edge(map[i], map[j]) {
                return false;
            }
        }
    }
    true
}

/// Finds an induced copy of `h` in `g`, returning `map[i]` = image of pattern
/// vertex `i`. Exhaustive: `None` means no copy exists.
pub fn find_induced_copy(g: &Graph, h: &PatternGraph) -> Option<Vec<usize>> {
    find_induced_copy_within(g, &g.vertices(), h)
}

/// As [`find_induced_copy`], restricted to copies inside `g[within]`.
pub fn find_induced_copy_within(
    g: &Graph,
    within: &VertexSet,
    h: &PatternGraph,
) -> Option<Vec<usize>> {
    let pattern = &h.graph;
    let k = pattern.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if within.len() < k {
        return None;
    }
    Search::new(g, within, pattern).run()
}

/// Backtracking with forward-checked bitset domains: once a pattern vertex is
/// placed, every later pattern vertex's domain is intersected with the
/// image's row (or its complement), and a branch dies as soon as any domain
/// empties.
struct Search<'a> {
    g: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    words: usize,
    // domains[depth * k + slot], each `words` long
    domains: Vec<u64>,
    image: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, within: &VertexSet, pattern: &'a Graph) -> Self {
        let k = pattern.n();
        let order = search_order(pattern);
        let words = within.words().len();
        let mut domains = vec![0u64; (k + 1) * k * words];
        let host_n = within.len();
        for (slot, &p) in order.iter().enumerate() {
            let pdeg = pattern.degree(p);
            let pnon = k - 1 - pdeg;
            // degree filter inside `within`
            let mut dom = VertexSet::new(g.n());
            for v in within {
                let d = g.degree_in(v, within);
                if d >= pdeg && host_n - 1 - d >= pnon {
                    dom.insert(v);
                }
            }
            domains[slot * words..(slot + 1) * words].copy_from_slice(dom.words());
        }
        Search {
            g,
            pattern,
            order,
            words,
            domains,
            image: vec![usize::MAX; k],
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        if self.descend(0) {
            let mut map = vec![0; self.order.len()];
            for (slot, &p) in self.order.iter().enumerate() {
                map[p] = self.image[slot];
            }
            Some(map)
        } else {
            None
        }
    }

    fn domain(&self, depth: usize, slot: usize) -> &[u64] {
        let k = self.order.len();
        let start = (depth * k + slot) * self.words;
        &self.domains[start..start + self.words]
    }

    fn descend(&mut self, depth: usize) -> bool {
        let k = self.order.len();
        let w = self.words;
        if depth + 1 == k {
            let dom = self.domain(depth, depth);
            for (i, &word) in dom.iter().enumerate() {
                if word != 0 {
                    self.image[depth] = i * 64 + word.trailing_zeros() as usize;
                    return true;
                }
            }
            return false;
        }
        let candidates: Vec<usize> = {
            let dom = self.domain(depth, depth);
            let mut out = Vec::new();
            for (i, &word) in dom.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    out.push(i * 64 + word.trailing_zeros() as usize);
                    word &= word - 1;
                }
            }
            out
        };
        let p = self.order[depth];
        for v in candidates {
            self.image[depth] = v;
            let row = self.g.neighbours(v).words();
            let mut alive = true;
            for slot in depth + 1..k {
                let q = self.order[slot];
                let adjacent = self.pattern.has_edge(p, q);
                let src = ((depth * k) + slot) * w;
                let dst = (((depth + 1) * k) + slot) * w;
                let mut any = 0u64;
                for i in 0..w {
                    let r = if adjacent { row[i] } else { !row[i] };
                    let val = self.domains[src + i] & r;
                    self.domains[dst + i] = val;
                    any |= val;
                }
                // the non-adjacency mask includes v itself; clear it
                self.domains[dst + v / 64] &= !(1u64 << (v % 64));
                if any == 0 || self.domains[dst..dst + w].iter().all(|&x| x == 0) {
                    alive = false;
                    break;
                }
            }
            if alive && self.descend(depth + 1) {
                return true;
            }
        }
        false
    }
}

/// Pattern vertices ordered by degree (descending, lowest index first on
/// ties), then greedily so that each next vertex has the most edges back into
/// the prefix.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !used[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        used[next] = true;
        order.push(next);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_patterns_match_textbook_edge_sets() {
        assert_eq!(PatternGraph::p5().graph().edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(PatternGraph::house().graph().edge_count(), 6);
        assert_eq!(PatternGraph::c5().graph().edge_count(), 5);
        assert_eq!(PatternGraph::p4().graph().edge_count(), 3);
        assert!(PatternGraph::new("big", Graph::empty(9)).is_err());
    }

    #[test]
    fn p5_in_itself_is_found() {
        let p5 = PatternGraph::p5();
        let map = find_induced_copy(p5.graph(), &p5).unwrap();
        assert!(is_induced_copy(p5.graph(), p5.graph(), &map));
    }

    #[test]
    fn no_p5_in_c5_or_house() {
        let p5 = PatternGraph::p5();
        assert_eq!(find_induced_copy(&Graph::cycle(5), &p5), None);
        assert_eq!(find_induced_copy(PatternGraph::house().graph(), &p5), None);
    }

    #[test]
    fn empty_pattern_returns_empty_map() {
        let empty = PatternGraph::new("K0", Graph::empty(0)).unwrap();
        assert_eq!(find_induced_copy(&Graph::cycle(4), &empty), Some(vec![]));
    }

    #[test]
    fn copies_respect_non_edges() {
        // K4 contains P4 as a subgraph but not as an induced subgraph
        assert_eq!(find_induced_copy(&Graph::complete(4), &PatternGraph::p4()), None);
        let c6 = Graph::cycle(6);
        let map = find_induced_copy(&c6, &PatternGraph::p5()).unwrap();
        assert!(is_induced_copy(&c6, PatternGraph::p5().graph(), &map));
    }

    #[test]
    fn search_within_a_subset() {
        let c6 = Graph::cycle(6);
        let s = c6.vertex_set([0, 1, 2, 3]);
        let map = find_induced_copy_within(&c6, &s, &PatternGraph::p4()).unwrap();
        assert!(map.iter().all(|&v| s.contains(v)));
        assert_eq!(find_induced_copy_within(&c6, &s, &PatternGraph::p5()), None);
    }
}
