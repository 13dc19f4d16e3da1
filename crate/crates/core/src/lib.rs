//! Combinatorial machinery for C(4)–T(4) small cancellation theory: presentations,
//! finite 2-complexes, pieces, disc diagrams with exact curvature, quadrizations
//! and group actions on finite complexes.
//!
//! Every check here works on finite, desk-scale instances. Searches are bounded
//! and say so in their results.

pub mod action;
pub mod complex;
pub mod corpus;
pub mod diagram;
pub mod presentation;
pub mod quadric;
pub mod smallcancel;
pub mod suite;

pub use action::{Automorphism, GroupAction};
pub use complex::{SignedEdge, TwoComplex};
pub use diagram::{CurvatureHalfPi, DiscDiagram};
pub use presentation::{CyclicWord, Letter, Presentation, Word};
pub use quadric::{Quadrization, SquareComplex};
pub use smallcancel::{Classification, PieceCatalog};
