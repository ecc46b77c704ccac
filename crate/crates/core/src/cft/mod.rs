//! Schmid-Witt symbols, conductors and upper ramification breaks.

mod conductor;
mod symbol;

use std::collections::BTreeMap;

pub use conductor::{conductor_exponent, conductor_via_symbol, ramification_break, Break, ConductorOracle};
pub use symbol::{factor_unit, lift_form, symbol_classical, symbol_residue, symbol_sum};

use crate::algebra::{FFElem, Fq, UnramRing, ZpApprox};
use crate::asw::LocalStandardForm;
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// `T^e u` with `e` a `p`-adic integer and `u` a one-unit.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnit {
    pub e: ZpApprox,
    pub one_unit: LaurentSeries<FFElem>,
}

impl LocalUnit {
    pub fn new(e: ZpApprox, one_unit: LaurentSeries<FFElem>) -> Result<Self> {
        let constant_is_one = one_unit.tail() == 0
            && one_unit
                .coeffs()
                .first()
                .is_some_and(|c| c.constant_term() == 1 && c.coeffs(crate::algebra::MAX_DEGREE)[1..].iter().all(|&d| d == 0));
        if !constant_is_one {
            return Err(Error::NotAUnit);
        }
        Ok(LocalUnit { e, one_unit })
    }
}

/// `i -> v(c_i)` for the terms of a form with `v(c_i) < N`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValuationProfile {
    entries: BTreeMap<u64, u32>,
}

impl ValuationProfile {
    /// Entries must have `i >= 1` prime to `p`.
    pub fn new(p: u64, entries: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let entries: BTreeMap<u64, u32> = entries.into_iter().collect();
        for &i in entries.keys() {
            if i == 0 || i % p == 0 {
                return Err(Error::InvalidInput(format!("profile index {i} must be positive and prime to p")));
            }
        }
        Ok(ValuationProfile { entries })
    }

    pub fn from_form(k: &Fq, sf: &LocalStandardForm) -> Self {
        let ur = UnramRing::new(k, sf.precision());
        let entries = sf
            .terms
            .iter()
            .filter_map(|(i, c)| ur.valuation(c).map(|v| (*i, v as u32)))
            .collect();
        ValuationProfile { entries }
    }

    pub fn entries(&self) -> &BTreeMap<u64, u32> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_valuation(&self) -> Option<u32> {
        self.entries.values().copied().min()
    }
}
