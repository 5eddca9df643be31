//! The two end-to-end extractions: a large restricted induced subgraph, and
//! a large clique or stable set.

use super::blocks::{blocks_extract, BlocksReport};
use super::cograph::max_hom_in_cograph;
use super::{house_final, Round2Outcome};
use crate::bitset::VertexSet;
use crate::certificate::{Certificate, HomKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::predicates::{restricted_side, Side};
use crate::primitives::rodl_restricted_subgraph;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational, Show};

/// Where a restricted set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RodlSource {
    /// Assembled by the cograph layout, or returned by its finder.
    Blocks,
    /// The direct restricted-subgraph search, which did at least as well.
    Search,
}

impl RodlSource {
    pub fn as_str(self) -> &'static str {
        match self {
            RodlSource::Blocks => "blocks",
            RodlSource::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RodlReport {
    pub set: VertexSet,
    pub side: Side,
    pub eps: Rational,
    /// The nominal size `ε^{3a} |g|`.
    pub target: Rational,
    pub source: RodlSource,
    pub blocks: BlocksReport,
}

impl RodlReport {
    pub fn certificate(&self, profile: &ConstantsProfile) -> Certificate {
        Certificate::restricted("polynomial_rodl", profile, self.set.clone(), self.eps.clone(), self.side)
            .with_target(self.target.clone())
    }
}

/// An `ε`-restricted induced subgraph, aiming at `ε^{3a} |g|` vertices.
///
/// Runs the cograph layout with [`house_final`] as the finder on each part,
/// and the direct search on the whole graph; the larger verified set wins,
/// the layout's on ties.
pub fn polynomial_rodl(g: &Graph, eps: &Rational, profile: &ConstantsProfile, seed: u64) -> Result<RodlReport> {
    if *eps <= rational::int(0) || *eps >= rational::ratio(1, 2) {
        return Err(Error::precondition(format!("ε = {} outside (0, 1/2)", Show(eps))));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    let a = profile.a();
    let target = rational::pow(eps, 3 * a) * rational::int(n);
    let mut calls = 0u64;
    let mut finder = |g: &Graph, part: &VertexSet| -> Result<Round2Outcome> {
        calls += 1;
        let (h, map) = g.induced_subgraph(part);
        match house_final(&h, eps, profile, seed.wrapping_add(calls)) {
            Ok(o) => Ok(o.lifted(&map, g.n())),
            Err(Error::PreconditionViolated { what, witness }) => Err(Error::precondition_with(
                what,
                witness.into_iter().map(|v| map[v]).collect(),
            )),
            Err(e) => Err(e),
        }
    };
    let blocks = blocks_extract(g, eps, a, &mut finder, profile)?;

    let search = rodl_restricted_subgraph(g, eps, &target);
    let (set, source) = match &blocks.restricted {
        Some((set, _)) if set.len() >= search.len() => (set.clone(), RodlSource::Blocks),
        _ => (search, RodlSource::Search),
    };
    let Some(side) = restricted_side(g, &set, eps) else {
        return Err(Error::internal("extracted set is not ε-restricted"));
    };
    Ok(RodlReport {
        set,
        side,
        eps: eps.clone(),
        target,
        source,
        blocks,
    })
}

/// How a homogeneous set was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EhSource {
    /// Maximum clique or stable set from the cotree.
    Cotree,
    /// Greedy growth inside repeated restricted subgraphs.
    Restricted,
}

impl EhSource {
    pub fn as_str(self) -> &'static str {
        match self {
            EhSource::Cotree => "cotree",
            EhSource::Restricted => "restricted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhReport {
    pub set: VertexSet,
    pub kind: HomKind,
    pub source: EhSource,
    /// Restricted-subgraph extractions spent.
    pub rounds: usize,
}

impl EhReport {
    /// `ln |S| / ln n`; 1 for graphs on at most one vertex.
    pub fn exponent(&self, n: usize) -> f64 {
        if n <= 1 {
            return 1.0;
        }
        (self.set.len().max(1) as f64).ln() / (n as f64).ln()
    }

    pub fn certificate(&self, profile: &ConstantsProfile) -> Certificate {
        Certificate::hom_set("eh_extract", profile, self.set.clone(), self.kind)
    }
}

/// A clique or stable set.
///
/// Grows a clique and a stable set together: each round takes a
/// `1/4`-restricted subgraph of what is left, adds its lowest-degree vertex
/// to the stable set (sparse side) or its highest-degree vertex to the clique
/// (dense side), and keeps the vertices of what is left that are consistent
/// with that choice, a superset of those inside the restricted subgraph. At
/// most `ceil(log2 n)` rounds use [`polynomial_rodl`]; later rounds use the
/// remaining set directly. Cographs also get the exact cotree answer, and the
/// larger set is returned.
pub fn eh_extract(g: &Graph, profile: &ConstantsProfile, seed: u64) -> Result<EhReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    let eps = rational::ratio(1, 4);
    let budget = (usize::BITS - (n - 1).leading_zeros()).max(1) as usize;

    let mut clique = VertexSet::new(n);
    let mut stable = VertexSet::new(n);
    let mut cur = g.vertices();
    let mut rounds = 0;
    while !cur.is_empty() {
        let (s, side) = if rounds < budget {
            rounds += 1;
            let (h, map) = g.induced_subgraph(&cur);
            let r = polynomial_rodl(&h, &eps, profile, seed.wrapping_add(rounds as u64))
                .map_err(|e| lift_error(e, &map))?;
            (VertexSet::from_iter(n, r.set.iter().map(|v| map[v])), r.side)
        } else {
            let pairs = cur.len() * cur.len().saturating_sub(1) / 2;
            let side = if 2 * g.edges_within(&cur) <= pairs { Side::Sparse } else { Side::Dense };
            (cur.clone(), side)
        };
        match side {
            Side::Sparse => {
                let v = s.iter().min_by_key(|&v| (g.degree_in(v, &s), v)).expect("nonempty");
                stable.insert(v);
                cur = cur.difference(g.neighbours(v));
                cur.remove(v);
            }
            Side::Dense => {
                let v = s.iter().max_by_key(|&v| (g.degree_in(v, &s), std::cmp::Reverse(v))).expect("nonempty");
                clique.insert(v);
                cur = g.neighbours(v).intersection(&cur);
            }
        }
    }
    let (mut set, mut kind, mut source) = if clique.len() > stable.len() {
        (clique, HomKind::Clique, EhSource::Restricted)
    } else {
        (stable, HomKind::Stable, EhSource::Restricted)
    };
    match max_hom_in_cograph(g, &g.vertices()) {
        Ok((h, k)) if h.len() > set.len() => {
            set = h;
            kind = k;
            source = EhSource::Cotree;
        }
        Ok(_) | Err(Error::PreconditionViolated { .. }) => {}
        Err(e) => return Err(e),
    }
    let ok = match kind {
        HomKind::Clique => g.is_clique(&set),
        HomKind::Stable => g.is_stable(&set),
    };
    if !ok {
        return Err(Error::internal(format!("extracted set is not a {}", kind.as_str())));
    }
    Ok(EhReport { set, kind, source, rounds })
}

fn lift_error(e: Error, map: &[usize]) -> Error {
    match e {
        Error::PreconditionViolated { what, witness } => Error::PreconditionViolated {
            what,
            witness: witness.into_iter().map(|v| map[v]).collect(),
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;
    use crate::rational::ratio;

    fn demo() -> ConstantsProfile {
        ConstantsProfile::demo_small()
    }

    #[test]
    fn clique_and_edgeless_are_kept_whole() {
        for g in [Graph::complete(40), Graph::empty(40)] {
            let r = polynomial_rodl(&g, &ratio(1, 4), &demo(), 0).unwrap();
            assert_eq!(r.set.len(), 40);
            assert!(verify(&r.certificate(&demo()), &g).unwrap().accepted());
        }
    }

    #[test]
    fn clique_gives_the_whole_clique() {
        let g = Graph::complete(30);
        let r = eh_extract(&g, &demo(), 0).unwrap();
        assert_eq!((r.set.len(), r.kind), (30, HomKind::Clique));
    }

    #[test]
    fn cograph_meets_the_square_root() {
        let g = Graph::complete_multipartite(&[3, 3, 3, 3, 3, 3]);
        let r = eh_extract(&g, &demo(), 0).unwrap();
        assert!(r.set.len() * r.set.len() >= 18);
        assert!(verify(&r.certificate(&demo()), &g).unwrap().accepted());
    }

    #[test]
    fn five_cycle_still_verifies() {
        let g = Graph::cycle(5);
        let r = eh_extract(&g, &demo(), 0).unwrap();
        assert_eq!(r.set.len(), 2);
        assert!(verify(&r.certificate(&demo()), &g).unwrap().accepted());
    }
}
