//! First sparsification round: pure-or-sparse blockades in sparse house-free
//! graphs, the layout-refinement engine, and semisparse blockades.
//!
//! Operations take a vertex set `within` and work in `g[within]`, so results
//! are always in host indices. When a step's hypothesis cannot be met at the
//! given scale (the guaranteed sizes need astronomically large graphs) the
//! step reports [`Error::DegenerateInput`] and callers fall back.

mod house;
mod layout;

pub use house::{
    house1_step, house1_within, house2_iterate, house2_within, house3_sparsify, house3_within,
    house4_blockade, house4_within,
};
pub use layout::{
    epsone_blockade, epsone_outcome, refine_layout, BlockFinder, LayoutAudit, LayoutReport, LayoutStep,
    StopReason,
};

use crate::bitset::VertexSet;
use crate::certificate::{classify_pairs, Blockade, BlockadeKind, Certificate, PairRelationMatrix};
use crate::error::Error;
use crate::graph::Graph;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Round1Outcome {
    /// `g[set]` is `sparsity`-sparse.
    Sparser { set: VertexSet, sparsity: Rational },
    /// A pure blockade of length `k`.
    PureBlockadeFound { blockade: Blockade, k: usize },
    /// Later blocks are `x`-sparse to earlier ones.
    XSparseBlockade { blockade: Blockade, x: Rational },
    /// `y_side` is `x`-sparse to `x_side`.
    SparsePair {
        x_side: VertexSet,
        y_side: VertexSet,
        x: Rational,
    },
    /// Every pair complete or weakly sparse at the matrix's threshold.
    SemisparseBlockade {
        blockade: Blockade,
        relations: PairRelationMatrix,
    },
}

impl Round1Outcome {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Round1Outcome::Sparser { .. } => "sparser",
            Round1Outcome::PureBlockadeFound { .. } => "pure_blockade",
            Round1Outcome::XSparseBlockade { .. } => "x_sparse_blockade",
            Round1Outcome::SparsePair { .. } => "sparse_pair",
            Round1Outcome::SemisparseBlockade { .. } => "semisparse_blockade",
        }
    }

    /// The certificate for this outcome, claiming the achieved sizes.
    pub fn certificate(&self, lemma_id: &str, profile: &ConstantsProfile, g: &Graph) -> Certificate {
        match self {
            Round1Outcome::Sparser { set, sparsity } => {
                Certificate::sparse_subset(lemma_id, profile, set.clone(), sparsity.clone())
            }
            Round1Outcome::PureBlockadeFound { blockade, .. } => Certificate::blockade(
                lemma_id,
                profile,
                g,
                blockade.clone(),
                BlockadeKind::Pure,
                rational::int(0),
            ),
            Round1Outcome::XSparseBlockade { blockade, x } => Certificate::blockade(
                lemma_id,
                profile,
                g,
                blockade.clone(),
                BlockadeKind::XSparse,
                x.clone(),
            ),
            Round1Outcome::SparsePair { x_side, y_side, x } => {
                let blockade = Blockade::new(vec![x_side.clone(), y_side.clone()])
                    .expect("sparse pair sides are disjoint and nonempty");
                Certificate::blockade(lemma_id, profile, g, blockade, BlockadeKind::XSparse, x.clone())
            }
            Round1Outcome::SemisparseBlockade { blockade, relations } => Certificate::blockade(
                lemma_id,
                profile,
                g,
                blockade.clone(),
                BlockadeKind::Semisparse,
                relations.x().clone(),
            ),
        }
    }
}

pub(crate) fn semisparse(g: &Graph, blockade: Blockade, x: &Rational) -> Round1Outcome {
    let relations = classify_pairs(g, &blockade, x);
    Round1Outcome::SemisparseBlockade { blockade, relations }
}

/// The step's guarantee needs a larger graph than the one given.
pub(crate) fn scale_miss(what: impl std::fmt::Display) -> Error {
    Error::DegenerateInput(format!("below the scale the argument needs: {what}"))
}

pub(crate) fn is_scale_miss(e: &Error) -> bool {
    matches!(e, Error::DegenerateInput(_))
}
