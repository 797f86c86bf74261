//! Exact computation of knot Alexander polynomials from knot contact
//! homology data.

pub mod algebra;
pub mod dga;
pub mod groebner;
pub mod par;
pub mod augment;
pub mod extract;
pub mod novikov;
pub mod oracle;
