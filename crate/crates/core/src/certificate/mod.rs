//! Verifiable conclusions.
//!
//! Every operation that claims a structural fact about a graph returns it as
//! a [`Certificate`]; [`verify`] re-derives each claimed property from the
//! graph alone. Claimed sizes are what the run actually achieved: when an
//! operation misses its nominal target (which is the norm under demo
//! constants), the certificate says so through its [`Target`] and still
//! verifies.

mod json;
mod structures;
mod verify;

pub use json::{graph_hash, CertificateDoc, Claim, DocError, SCHEMA_VERSION};
pub use structures::{
    classify_pair, classify_pairs, Blockade, BlockadeKind, Comb, Layout, PairRelationMatrix,
    Relation,
};
pub use verify::{verify, verify_document, Failure, StructuralError, Verdict};

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::predicates::Side;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational};

/// Clique or stable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomKind {
    Clique,
    Stable,
}

impl HomKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HomKind::Clique => "clique",
            HomKind::Stable => "stable",
        }
    }

    pub fn parse(s: &str) -> Option<HomKind> {
        match s {
            "clique" => Some(HomKind::Clique),
            "stable" => Some(HomKind::Stable),
            _ => None,
        }
    }

    pub fn flipped(self) -> HomKind {
        match self {
            HomKind::Clique => HomKind::Stable,
            HomKind::Stable => HomKind::Clique,
        }
    }
}

/// The conclusion a certificate asserts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    /// `g[set]` (side `Sparse`) or its complement (side `Dense`) is
    /// `eps`-sparse, and `|set| >= min_size`.
    Restricted {
        set: VertexSet,
        eps: Rational,
        side: Side,
        min_size: Rational,
    },
    /// A blockade of the given kind with at least `length` blocks of at least
    /// `width` vertices, plus a tag for every pair at threshold
    /// `relations.x()`.
    Blockade {
        blockade: Blockade,
        kind: BlockadeKind,
        length: usize,
        width: Rational,
        relations: PairRelationMatrix,
    },
    Comb {
        comb: Comb,
        length: usize,
        width: Rational,
    },
    /// No edges between `x` and `y`; both have at least `width` vertices.
    AnticompletePair {
        x: VertexSet,
        y: VertexSet,
        width: Rational,
    },
    HomSet {
        set: VertexSet,
        kind: HomKind,
        min_size: Rational,
    },
    /// `g[set]` is `y`-sparse and `|set| >= min_size`.
    SparseSubset {
        set: VertexSet,
        y: Rational,
        min_size: Rational,
    },
    /// A layout whose wrong pairs number at most `x` times its decided pairs.
    Layout { layout: Layout, x: Rational },
}

impl Body {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Body::Restricted { .. } => "restricted",
            Body::Blockade { .. } => "blockade",
            Body::Comb { .. } => "comb",
            Body::AnticompletePair { .. } => "anticomplete_pair",
            Body::HomSet { .. } => "hom_set",
            Body::SparseSubset { .. } => "sparse_subset",
            Body::Layout { .. } => "layout",
        }
    }

    /// The size the target is measured against: set size for set-valued
    /// conclusions, minimum block size for blockades, combs, pairs and
    /// layouts.
    pub fn measure(&self) -> usize {
        match self {
            Body::Restricted { set, .. }
            | Body::HomSet { set, .. }
            | Body::SparseSubset { set, .. } => set.len(),
            Body::Blockade { blockade, .. } => blockade.width(),
            Body::Comb { comb, .. } => comb.width(),
            Body::AnticompletePair { x, y, .. } => x.len().min(y.len()),
            Body::Layout { layout, .. } => {
                layout.parts().iter().map(VertexSet::len).min().unwrap_or(0)
            }
        }
    }
}

/// The nominal bound an operation aimed for, and whether it was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub bound: Rational,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lemma_id: String,
    pub profile_name: String,
    pub profile_entries: BTreeMap<String, Rational>,
    pub body: Body,
    pub target: Option<Target>,
}

impl Certificate {
    pub fn new(lemma_id: impl Into<String>, profile: &ConstantsProfile, body: Body) -> Self {
        Certificate {
            lemma_id: lemma_id.into(),
            profile_name: profile.name().to_string(),
            profile_entries: profile.entries().clone(),
            body,
            target: None,
        }
    }

    /// Records the nominal bound for [`Body::measure`].
    pub fn with_target(mut self, bound: Rational) -> Self {
        let met = rational::count_ge(self.body.measure(), &bound, 1);
        self.target = Some(Target { bound, met });
        self
    }

    pub fn target_met(&self) -> Option<bool> {
        self.target.as_ref().map(|t| t.met)
    }

    /// Shorthand for a restricted-subgraph certificate whose claimed size is
    /// the actual size.
    pub fn restricted(
        lemma_id: &str,
        profile: &ConstantsProfile,
        set: VertexSet,
        eps: Rational,
        side: Side,
    ) -> Self {
        let min_size = rational::int(set.len());
        Self::new(
            lemma_id,
            profile,
            Body::Restricted {
                set,
                eps,
                side,
                min_size,
            },
        )
    }

    /// Blockade certificate claiming its actual length and width, with
    /// relation tags computed at `x`.
    pub fn blockade(
        lemma_id: &str,
        profile: &ConstantsProfile,
        g: &Graph,
        blockade: Blockade,
        kind: BlockadeKind,
        x: Rational,
    ) -> Self {
        let relations = classify_pairs(g, &blockade, &x);
        let length = blockade.len();
        let width = rational::int(blockade.width());
        Self::new(
            lemma_id,
            profile,
            Body::Blockade {
                blockade,
                kind,
                length,
                width,
                relations,
            },
        )
    }

    pub fn hom_set(lemma_id: &str, profile: &ConstantsProfile, set: VertexSet, kind: HomKind) -> Self {
        let min_size = rational::int(set.len());
        Self::new(lemma_id, profile, Body::HomSet { set, kind, min_size })
    }

    pub fn sparse_subset(lemma_id: &str, profile: &ConstantsProfile, set: VertexSet, y: Rational) -> Self {
        let min_size = rational::int(set.len());
        Self::new(lemma_id, profile, Body::SparseSubset { set, y, min_size })
    }

    pub fn anticomplete_pair(
        lemma_id: &str,
        profile: &ConstantsProfile,
        x: VertexSet,
        y: VertexSet,
    ) -> Self {
        let width = rational::int(x.len().min(y.len()));
        Self::new(lemma_id, profile, Body::AnticompletePair { x, y, width })
    }

    pub fn comb(lemma_id: &str, profile: &ConstantsProfile, comb: Comb) -> Self {
        let length = comb.len();
        let width = rational::int(comb.width());
        Self::new(lemma_id, profile, Body::Comb { comb, length, width })
    }

    pub fn to_doc(&self, g: &Graph) -> CertificateDoc {
        CertificateDoc::from_certificate(self, g)
    }

    pub fn to_json(&self, g: &Graph) -> String {
        self.to_doc(g).to_json()
    }
}
