//! Computational toolkit for the genus-2 Goeritz group.
//!
//! The group engine works with normal forms in an amalgamated free product
//! `A *_C B`; on top of it sit a Nielsen-Thurston classifier, the Bass-Serre
//! tree and coned-off Cayley graph, slope computations for the trefoil and
//! figure-8 splittings, and a genus-1 fibered knot recognizer.

pub mod cli;
pub mod complexes;
pub mod goeritz_group;
pub mod heegaard_recognizer;
pub mod nt_classifier;
pub mod slope_lab;
pub mod word_core;

/// Slopes with machine-integer numerator and denominator.
pub type Slope = slope_lab::SlopeOf<i64>;

/// Determinant-one integer matrices.
pub type Sl2Matrix = slope_lab::Sl2Of<i64>;
