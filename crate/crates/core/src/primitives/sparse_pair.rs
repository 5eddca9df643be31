//! An anticomplete pair of linear size in a sparse P5-free graph.

use crate::bitset::VertexSet;
use crate::certificate::Blockade;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{find_induced_copy, PatternGraph};
use crate::predicates::is_x_sparse;
use crate::rational::{self, Rational};

/// The density at which the pair is guaranteed for every large enough graph.
pub fn guaranteed_eta() -> Rational {
    rational::pow2(-5)
}

/// An anticomplete blockade of length 2 and width at least `eta |g|`.
///
/// Checks `|g| >= 1/eta`, `eta`-sparsity and P5-freeness up front. For
/// `eta = 2^-5` a pair always exists and failing to find one is an internal
/// error; for larger `eta` the search may come up empty, which is reported as
/// [`Error::DegenerateInput`].
pub fn anticomplete_pair_sparse(g: &Graph, eta: &Rational) -> Result<Blockade> {
    check_size_and_sparsity(g, eta)?;
    if let Some(copy) = find_induced_copy(g, &PatternGraph::p5()) {
        return Err(Error::precondition_with("graph contains an induced P5", copy));
    }
    search(g, eta)
}

/// As [`anticomplete_pair_sparse`] but trusts the caller on P5-freeness. An
/// induced P5 met along the way is still reported as a precondition failure.
pub(crate) fn anticomplete_pair_sparse_trusted(g: &Graph, eta: &Rational) -> Result<Blockade> {
    check_size_and_sparsity(g, eta)?;
    search(g, eta)
}

fn check_size_and_sparsity(g: &Graph, eta: &Rational) -> Result<()> {
    let n = g.n();
    if *eta <= rational::int(0) || rational::below_inverse_power(n, eta, 1) {
        return Err(Error::DegenerateInput(format!(
            "{n} vertices, need at least 1/eta = {}",
            rational::Show(&eta.recip())
        )));
    }
    if !is_x_sparse(g, eta) {
        let (d, v) = g.max_degree_within(&g.vertices()).expect("graph is nonempty");
        return Err(Error::precondition_with(
            format!("vertex {v} has degree {d}, above eta |G|"),
            vec![v],
        ));
    }
    Ok(())
}

fn search(g: &Graph, eta: &Rational) -> Result<Blockade> {
    let need = rational::ceil_mul(eta, g.n()).max(1);
    if let Some((x, y)) = walk(g, need)? {
        return finish(g, x, y);
    }
    for v in 0..g.n() {
        let mut rest = g.neighbours(v).complement();
        rest.remove(v);
        if let Some((x, y)) = split(&g.components_within(&rest), need) {
            return finish(g, x, y);
        }
    }
    if *eta <= guaranteed_eta() {
        Err(Error::internal(
            "no anticomplete pair found in a sparse P5-free graph",
        ))
    } else {
        Err(Error::DegenerateInput(format!(
            "no anticomplete pair of width {need} found at eta = {}",
            rational::Show(eta)
        )))
    }
}

fn finish(g: &Graph, x: VertexSet, y: VertexSet) -> Result<Blockade> {
    if !g.is_anticomplete_to(&x, &y) {
        return Err(Error::internal("split sides are joined by an edge"));
    }
    Blockade::new(vec![x, y])
}

/// Follows the contradiction argument: components of `g`, then of `F'`,
/// then of `J \ B`. Returns the first split with both sides of size `need`;
/// if the walk reaches its end, the P5 it exhibits is returned as a
/// precondition failure.
fn walk(g: &Graph, need: usize) -> Result<Option<(VertexSet, VertexSet)>> {
    let comps = g.components();
    if let Some(pair) = split(&comps, need) {
        return Ok(Some(pair));
    }
    let f = largest(comps);
    // the lowest-degree vertex of F leaves the most room in F'
    let v = f
        .iter()
        .min_by_key(|&v| (g.degree(v), v))
        .expect("largest component is nonempty");
    let a = g.neighbours(v).intersection(&f);
    if a.is_empty() {
        return Ok(None);
    }
    let mut f_prime = f.difference(&a);
    f_prime.remove(v);
    let comps = g.components_within(&f_prime);
    if let Some(pair) = split(&comps, need) {
        return Ok(Some(pair));
    }
    if comps.is_empty() {
        return Ok(None);
    }
    let j = largest(comps);
    let Some((u, w)) = a.iter().find_map(|u| g.neighbours(u).intersection(&j).first().map(|w| (u, w)))
    else {
        return Ok(None);
    };
    let b = g.neighbours(u).intersection(&j);
    let comps = g.components_within(&j.difference(&b));
    if let Some(pair) = split(&comps, need) {
        return Ok(Some(pair));
    }
    if comps.is_empty() {
        return Ok(None);
    }
    let j_prime = largest(comps);
    // J' is connected and w is mixed on it, so some edge of J' leaves N(w)
    if let Some([z, z2]) = mixed_path(g, w, &j_prime) {
        return Err(Error::precondition_with(
            "graph contains an induced P5",
            vec![v, u, w, z, z2],
        ));
    }
    Ok(None)
}

/// Adjacent `z, z'` in the connected set `s` with `z ~ w` and `z' !~ w`.
fn mixed_path(g: &Graph, w: usize, s: &VertexSet) -> Option<[usize; 2]> {
    s.iter()
        .filter(|&z| g.has_edge(w, z))
        .find_map(|z| {
            g.neighbours(z)
                .intersection(s)
                .iter()
                .find(|&z2| z2 != w && !g.has_edge(w, z2))
                .map(|z2| [z, z2])
        })
}

fn largest(parts: Vec<VertexSet>) -> VertexSet {
    parts
        .into_iter()
        .max_by_key(|p| (p.len(), std::cmp::Reverse(p.first())))
        .expect("at least one part")
}

/// Groups pairwise anticomplete parts into two sides, each of size at least
/// `need`, largest part first onto the currently smaller side.
fn split(parts: &[VertexSet], need: usize) -> Option<(VertexSet, VertexSet)> {
    let universe = parts.first()?.universe();
    let mut order: Vec<&VertexSet> = parts.iter().collect();
    order.sort_by_key(|p| (std::cmp::Reverse(p.len()), p.first()));
    let mut x = VertexSet::new(universe);
    let mut y = VertexSet::new(universe);
    for p in order {
        if x.len() <= y.len() {
            x.union_with(p);
        } else {
            y.union_with(p);
        }
    }
    (x.len() >= need && y.len() >= need).then_some((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_pair(g: &Graph, b: &Blockade, need: usize) {
        assert_eq!(b.len(), 2);
        assert!(b.width() >= need);
        assert!(g.is_anticomplete_to(&b.blocks()[0], &b.blocks()[1]));
    }

    #[test]
    fn empty_graph_on_32() {
        let g = Graph::empty(32);
        let b = anticomplete_pair_sparse(&g, &guaranteed_eta()).unwrap();
        check_pair(&g, &b, 1);
    }

    #[test]
    fn perfect_matching_on_64() {
        let edges: Vec<_> = (0..32).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::from_edges(64, &edges).unwrap();
        let b = anticomplete_pair_sparse(&g, &guaranteed_eta()).unwrap();
        check_pair(&g, &b, 2);
    }

    #[test]
    fn star_is_not_sparse() {
        let edges: Vec<_> = (1..=40).map(|j| (0, j)).collect();
        let g = Graph::from_edges(41, &edges).unwrap();
        assert!(matches!(
            anticomplete_pair_sparse(&g, &guaranteed_eta()),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn too_small_is_degenerate() {
        assert!(matches!(
            anticomplete_pair_sparse(&Graph::empty(31), &guaranteed_eta()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn long_path_contains_p5() {
        let g = Graph::path(64);
        match anticomplete_pair_sparse(&g, &guaranteed_eta()) {
            Err(Error::PreconditionViolated { witness, .. }) => assert_eq!(witness.len(), 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disjoint_triangles_need_no_walk() {
        // 22 triangles: components split evenly
        let edges: Vec<_> = (0..22)
            .flat_map(|i| [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * i + 2)])
            .collect();
        let g = Graph::from_edges(66, &edges).unwrap();
        let b = anticomplete_pair_sparse(&g, &guaranteed_eta()).unwrap();
        check_pair(&g, &b, 2);
    }

    #[test]
    fn walk_exhibits_the_p5_it_runs_into() {
        let g = Graph::path(64);
        match anticomplete_pair_sparse_trusted(&g, &guaranteed_eta()) {
            Err(Error::PreconditionViolated { witness, .. }) => {
                assert_eq!(witness, vec![0, 1, 2, 3, 4]);
                let h = PatternGraph::p5();
                assert!(crate::pattern::is_induced_copy(&g, h.graph(), &witness));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
