//! Ground truth and test material: brute-force oracles, generators for the
//! hereditary classes, and the batch harness that measures the achieved
//! clique-or-stable-set exponent.

pub mod catalogue;
mod generate;
mod harness;
mod oracle;

pub use catalogue::Catalogue;
pub use generate::{generate, substitute, Exclude, Family, GeneratorSpec, REJECTION_ATTEMPTS};
pub use harness::{exponent_harness, HarnessOptions, Pipeline, Row, Table};
pub use oracle::{
    brute_best_restricted, brute_max_hom, exhaustive_max_hom, max_clique, max_clique_with, OracleCaps,
};
