//! Finite fields, Galois rings and the unramified coefficient ring.

mod embed;
mod field;
mod galois;
mod unram;

pub use embed::Embedding;
pub use field::{FFElem, FieldSpec, Fq, MAX_DEGREE};
pub use galois::{GaloisRing, GrElem};
pub use unram::{UnramElem, UnramRing, ZpApprox};

