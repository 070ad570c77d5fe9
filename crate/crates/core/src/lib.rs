//! Genome rearrangement algorithms for genomes with duplicated markers.
//!
//! Genomes are parsed from a small text format (`[ ... ]` for linear chromosomes,
//! `( ... )` for circular ones, `x'` for the second copy of marker `x`), and every
//! distance comes with a replayable scenario. A breadth-first [`oracle`] recomputes
//! distances exhaustively on small instances.

pub mod classic;
pub mod classify;
pub mod dedouble;
pub mod error;
pub mod genome;
pub mod graphs;
pub mod halving;
pub mod ops;
pub mod oracle;
pub mod par;
pub mod random;
pub mod reduce;
pub mod verify;

pub use error::{Error, Result};
pub use genome::{
    parse_genome, Adjacency, Chromosome, Extremity, Gene, Genome, Marker, Paralog, Point, Shape, Side, Sign,
};
pub use ops::{Dcj, Duplication, Operation, Scenario};
