//! Cotrees and the clique-or-stable-set fact for cographs.

use super::Round2Outcome;
use crate::bitset::VertexSet;
use crate::certificate::HomKind;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{find_induced_copy_within, PatternGraph};

/// Decomposition of a P4-free graph: a union node's children are its
/// components, a join node's children its anticomponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    /// The cotree of `g[set]`, or the induced P4 that stops it.
    pub fn build(g: &Graph, set: &VertexSet) -> Result<Cotree> {
        if set.is_empty() {
            return Err(Error::DegenerateInput("empty vertex set has no cotree".into()));
        }
        if set.len() == 1 {
            return Ok(Cotree::Leaf(set.first().expect("nonempty")));
        }
        let comps = g.components_within(set);
        if comps.len() > 1 {
            return comps.iter().map(|c| Cotree::build(g, c)).collect::<Result<_>>().map(Cotree::Union);
        }
        let anti = g.anticomponents_within(set);
        if anti.len() > 1 {
            return anti.iter().map(|c| Cotree::build(g, c)).collect::<Result<_>>().map(Cotree::Join);
        }
        // connected and anticonnected on two or more vertices: not a cograph
        match find_induced_copy_within(g, set, &PatternGraph::p4()) {
            Some(copy) => Err(Error::precondition_with("graph contains an induced P4", copy)),
            None => Err(Error::internal(
                "connected, anticonnected vertex set without an induced P4",
            )),
        }
    }

    /// A maximum stable set and a maximum clique, as vertex lists.
    fn best(&self) -> (Vec<usize>, Vec<usize>) {
        match self {
            Cotree::Leaf(v) => (vec![*v], vec![*v]),
            Cotree::Union(children) => {
                let parts: Vec<_> = children.iter().map(Cotree::best).collect();
                let stable = parts.iter().flat_map(|p| p.0.iter().copied()).collect();
                let clique = longest(parts.into_iter().map(|p| p.1));
                (stable, clique)
            }
            Cotree::Join(children) => {
                let parts: Vec<_> = children.iter().map(Cotree::best).collect();
                let clique = parts.iter().flat_map(|p| p.1.iter().copied()).collect();
                let stable = longest(parts.into_iter().map(|p| p.0));
                (stable, clique)
            }
        }
    }
}

fn longest(lists: impl Iterator<Item = Vec<usize>>) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for l in lists {
        if l.len() > best.len() {
            best = l;
        }
    }
    best
}

/// The larger of a maximum clique and a maximum stable set of the cograph
/// `g[set]` (stable on ties). Cographs are perfect, so the product of the two
/// is at least `|set|` and the result has at least `ceil(sqrt |set|)` vertices.
pub fn max_hom_in_cograph(g: &Graph, set: &VertexSet) -> Result<(VertexSet, HomKind)> {
    if set.is_empty() {
        return Ok((VertexSet::new(g.n()), HomKind::Stable));
    }
    let (stable, clique) = Cotree::build(g, set)?.best();
    let (list, kind) = if clique.len() > stable.len() {
        (clique, HomKind::Clique)
    } else {
        (stable, HomKind::Stable)
    };
    Ok((VertexSet::from_iter(g.n(), list), kind))
}

pub fn cograph_clique_or_stable(j: &Graph) -> Result<Round2Outcome> {
    let (set, kind) = max_hom_in_cograph(j, &j.vertices())?;
    Ok(Round2Outcome::HomSet { set, kind })
}
