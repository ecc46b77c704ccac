//! Laurent series with explicit precision, and the unit factorisation used
//! by the symbol.

mod factor;
mod laurent;

pub use factor::{
    expand_factors, factor_one_unit, teich_lift_dlog, unit_factorization, TwoSidedSeries,
    UnitFactorization,
};
pub use laurent::{LaurentRing, LaurentSeries, DEFAULT_REL_PREC};
