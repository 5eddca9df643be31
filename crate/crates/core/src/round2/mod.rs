//! Second sparsification round and the endgame: long semisparse blockades
//! turned into anticomplete pairs, complete-or-anticomplete blockades, the
//! cograph layout that assembles a restricted subgraph, and the two
//! extraction pipelines.

mod blocks;
mod cograph;
mod house6;
mod house_final;
mod pipeline;

pub use blocks::{blocks_extract, BlocksReport, BlocksStep, BlocksStop, PartFinder};
pub use cograph::{cograph_clique_or_stable, max_hom_in_cograph, Cotree};
pub use house6::{house6_step, house7_iterate};
pub use house_final::house_final;
pub use pipeline::{eh_extract, polynomial_rodl, EhReport, EhSource, RodlReport, RodlSource};

use crate::bitset::VertexSet;
use crate::certificate::{Blockade, BlockadeKind, Certificate, HomKind};
use crate::graph::Graph;
use crate::predicates::Side;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Round2Outcome {
    /// `g[set]` is `y`-sparse.
    SparseSubset { set: VertexSet, y: Rational },
    CompleteBlockade { blockade: Blockade },
    /// `y` is anticomplete to `x`.
    AnticompletePair { x: VertexSet, y: VertexSet },
    /// Every pair complete (`kind` `Complete`) or every pair anticomplete.
    CompleteOrAnticompleteBlockade { blockade: Blockade, kind: BlockadeKind },
    Restricted { set: VertexSet, eps: Rational, side: Side },
    HomSet { set: VertexSet, kind: HomKind },
}

impl Round2Outcome {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Round2Outcome::SparseSubset { .. } => "sparse_subset",
            Round2Outcome::CompleteBlockade { .. } => "complete_blockade",
            Round2Outcome::AnticompletePair { .. } => "anticomplete_pair",
            Round2Outcome::CompleteOrAnticompleteBlockade { .. } => "complete_or_anticomplete_blockade",
            Round2Outcome::Restricted { .. } => "restricted",
            Round2Outcome::HomSet { .. } => "hom_set",
        }
    }

    /// Moves every vertex set from an induced subgraph into its host.
    pub(crate) fn lifted(self, map: &[usize], host_n: usize) -> Round2Outcome {
        let lift = |s: VertexSet| VertexSet::from_iter(host_n, s.iter().map(|v| map[v]));
        match self {
            Round2Outcome::SparseSubset { set, y } => Round2Outcome::SparseSubset { set: lift(set), y },
            Round2Outcome::CompleteBlockade { blockade } => Round2Outcome::CompleteBlockade {
                blockade: blockade.lifted(map, host_n),
            },
            Round2Outcome::AnticompletePair { x, y } => Round2Outcome::AnticompletePair {
                x: lift(x),
                y: lift(y),
            },
            Round2Outcome::CompleteOrAnticompleteBlockade { blockade, kind } => {
                Round2Outcome::CompleteOrAnticompleteBlockade {
                    blockade: blockade.lifted(map, host_n),
                    kind,
                }
            }
            Round2Outcome::Restricted { set, eps, side } => Round2Outcome::Restricted {
                set: lift(set),
                eps,
                side,
            },
            Round2Outcome::HomSet { set, kind } => Round2Outcome::HomSet { set: lift(set), kind },
        }
    }

    /// The certificate for this outcome, claiming the achieved sizes.
    pub fn certificate(&self, lemma_id: &str, profile: &ConstantsProfile, g: &Graph) -> Certificate {
        match self {
            Round2Outcome::SparseSubset { set, y } => {
                Certificate::sparse_subset(lemma_id, profile, set.clone(), y.clone())
            }
            Round2Outcome::CompleteBlockade { blockade } => Certificate::blockade(
                lemma_id,
                profile,
                g,
                blockade.clone(),
                BlockadeKind::Complete,
                rational::int(0),
            ),
            Round2Outcome::AnticompletePair { x, y } => {
                Certificate::anticomplete_pair(lemma_id, profile, x.clone(), y.clone())
            }
            Round2Outcome::CompleteOrAnticompleteBlockade { blockade, kind } => Certificate::blockade(
                lemma_id,
                profile,
                g,
                blockade.clone(),
                *kind,
                rational::int(0),
            ),
            Round2Outcome::Restricted { set, eps, side } => {
                Certificate::restricted(lemma_id, profile, set.clone(), eps.clone(), *side)
            }
            Round2Outcome::HomSet { set, kind } => Certificate::hom_set(lemma_id, profile, set.clone(), *kind),
        }
    }
}

/// `eps^(d - k)`, or 1 when `k >= d`; thresholds at or above 1 hold for
/// every pair, so the cap changes nothing.
pub(crate) fn eps_pow_minus(eps: &Rational, d: u64, k: u64) -> Rational {
    if d > k {
        rational::pow(eps, d - k)
    } else {
        rational::int(1)
    }
}
