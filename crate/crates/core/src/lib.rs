//! Exact arithmetic for `Z_p`-towers of function fields: Witt vectors,
//! Artin-Schreier-Witt normal forms, the Schmid-Witt symbol, conductors,
//! genus sequences and Frobenius elements.
//!
//! Coefficient rings carry runtime data (the prime, a modulus, a precision),
//! so the arithmetic is generic over a ring context ([`ring::Ring`]) rather
//! than over a scalar type. The aliases below name the concrete rings.

pub mod algebra;
pub mod asw;
pub mod cft;
mod error;
pub mod poly;
pub mod ring;
pub mod series;
pub mod tower;
pub mod witt;

pub use error::{Error, Result};

/// Laurent series `k((T))` over a finite field.
pub type LocalField = series::LaurentRing<algebra::Fq>;
/// An element of [`LocalField`].
pub type LocalElem = series::LaurentSeries<algebra::FFElem>;
/// Rational functions `k(X)`.
pub type GlobalField = poly::RatFuncRing;
/// An element of [`GlobalField`].
pub type GlobalElem = poly::RatFunc<algebra::FFElem>;
/// `W_N(F_q)`.
pub type WittFq = witt::WittRing<algebra::Fq>;
/// `W_N(k((T)))`.
pub type WittLocal = witt::WittRing<LocalField>;
/// `W_N(k(X))`.
pub type WittGlobal = witt::WittRing<GlobalField>;
