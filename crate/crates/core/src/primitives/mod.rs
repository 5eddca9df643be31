//! Building blocks shared by both extraction rounds.

pub mod comb;
pub mod cores;
pub mod covering;
pub mod rodl;
pub mod sparse_pair;

pub use comb::{comb_or_sparse_cover, small_cover_holds, CombOutcome};
pub use cores::{complete_blockade_from_anticomponents, complete_blockade_within};
pub use covering::{covered_by, covering_set, CoverMode};
pub use rodl::{rodl_restricted_subgraph, rodl_within};
pub use sparse_pair::{anticomplete_pair_sparse, guaranteed_eta};
