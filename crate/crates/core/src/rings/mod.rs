//! Exact coefficient arithmetic: the three supported rings, Laurent
//! polynomials in `q`, and integer matrix normal forms.

mod fieldmat;
mod intmat;
mod laurent;
mod scalar;

pub use fieldmat::FieldMat;
pub use intmat::{lattice_quotient, IntMat, LatticeHomology, SmithForm};
pub use laurent::LaurentQ;
pub use scalar::{RingSpec, Scalar};
