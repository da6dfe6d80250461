//! Laurent polynomials over Q(ζ_N) and matrix algebra over the field and
//! over the Laurent ring.

mod mat;
mod matl;
mod poly;

pub use mat::{Mat, Rref};
pub use matl::MatL;
pub use poly::{LaurentPoly, Multiplicity};
