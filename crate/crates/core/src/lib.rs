//! Exact twisted Alexander polynomials, group cohomology and deformation
//! criteria for representations of knot groups.
//!
//! All arithmetic happens in a cyclotomic field Q(ζ_N) (see [`cyclofield`]).
//! Polynomials are compared up to units `c·t^k` through a canonical
//! normalization (see [`laurentlin::LaurentPoly::normalize`]).

pub mod alexander;
pub mod cohomology;
pub mod cyclofield;
pub mod deform;
pub mod error;
pub mod expr;
pub mod fpgroup;
pub mod laurentlin;
pub mod paperlab;
pub mod repspace;

pub use alexander::AlexanderData;
pub use cohomology::{CochainComplex, Cocycle, CohomDims};
pub use cyclofield::{CycElt, CycField};
pub use deform::{Classification, DeformReport};
pub use error::{Error, Result};
pub use fpgroup::{fox_derivative, torus_knot, trefoil, GroupRingElt, Letter, Presentation, Word};
pub use laurentlin::{LaurentPoly, Mat, MatL, Multiplicity};
pub use repspace::{Action, RepModule, Representation};
