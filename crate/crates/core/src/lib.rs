pub mod bitset;
pub mod error;
pub mod graph;
pub mod io;
pub mod lab;
pub mod pattern;
pub mod predicates;
pub mod primitives;
pub mod round1;
pub mod round2;
pub mod rational;
pub mod certificate;
pub mod cli;
pub mod profile;
