//! Splitting-type loci of morphisms from the projective line to a
//! Grassmannian G(r, n).
//!
//! A degree-e morphism pulls the universal sub- and quotient bundles back to
//! the line, where each splits as a sum of line bundles. This crate builds
//! explicit monomial-matrix witnesses realizing a prescribed pair of
//! splitting types, certifies exactness and unobstructedness symbolically
//! over the rationals, and enumerates the combinatorial fillings that govern
//! the components of the locus with fixed restricted tangent bundle.

pub mod construction;
pub mod exactness;
pub mod fillings;
pub mod linalg;
pub mod polyring;
pub mod splitting;
pub mod transversality;

pub use construction::{build, ExactSequence, MonomialMatrix};
pub use polyring::{HomPoly, Rational};
pub use splitting::{SplittingPair, SplittingType};
