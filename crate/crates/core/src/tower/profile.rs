//! Ramification data per place: finite valuation profiles or procedural
//! streams of `(i_k, v_k)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cft::{conductor_exponent, ValuationProfile};
use crate::error::{Error, Result};

/// Declared supremum of `i_k p^-v_k` for a procedural stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupDeclaration {
    pub sup: BigRational,
    pub attained: bool,
}

/// The terms `(i_k, v_k)` of a stream with `v_k < horizon`, all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stream {
    terms: Vec<(u64, u32)>,
    horizon: u32,
    declared: Option<SupDeclaration>,
}

impl Stream {
    pub fn new(p: u64, terms: Vec<(u64, u32)>, horizon: u32, declared: Option<SupDeclaration>) -> Result<Self> {
        for (idx, &(i, v)) in terms.iter().enumerate() {
            if i == 0 || i % p == 0 {
                return Err(Error::InvalidInput(format!("stream index {i} must be positive and prime to p")));
            }
            if v >= horizon {
                return Err(Error::InvalidInput(format!("stream valuation {v} is not below the horizon {horizon}")));
            }
            if idx > 0 && terms[idx - 1].1 >= v {
                return Err(Error::InvalidInput("stream valuations must be strictly increasing".into()));
            }
        }
        if let Some(d) = &declared {
            for &(i, v) in &terms {
                let ratio = BigRational::new(i.into(), BigInt::from(p).pow(v));
                if ratio > d.sup || (!d.attained && ratio == d.sup) {
                    return Err(Error::InvalidInput(format!(
                        "term ({i}, {v}) contradicts the declared supremum {}",
                        d.sup
                    )));
                }
            }
        }
        Ok(Stream {
            terms,
            horizon,
            declared,
        })
    }

    /// Builds the stream from `v -> i` (`None` for no term of valuation `v`).
    pub fn from_fn(
        p: u64,
        horizon: u32,
        f: impl Fn(u32) -> Option<u64>,
        declared: Option<SupDeclaration>,
    ) -> Result<Self> {
        let terms = (0..horizon).filter_map(|v| f(v).map(|i| (i, v))).collect();
        Stream::new(p, terms, horizon, declared)
    }

    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn declared(&self) -> Option<&SupDeclaration> {
        self.declared.as_ref()
    }

    pub fn conductor(&self, p: u64, n: u32) -> Result<u64> {
        if n > self.horizon {
            return Err(Error::HorizonTooSmall(self.horizon));
        }
        Ok(self
            .terms
            .iter()
            .filter(|(_, v)| *v < n)
            .map(|&(i, v)| i * p.pow(n - v - 1))
            .max()
            .map_or(0, |m| m + 1))
    }
}

/// Compares `i1 p^-v1` with `i2 p^-v2`.
pub(crate) fn cmp_weight(p: u64, (i1, v1): (u64, u32), (i2, v2): (u64, u32)) -> Ordering {
    let lhs = BigInt::from(i1) * BigInt::from(p).pow(v2);
    let rhs = BigInt::from(i2) * BigInt::from(p).pow(v1);
    lhs.cmp(&rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceData {
    Finite(ValuationProfile),
    Procedural(Stream),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceProfile {
    pub label: String,
    pub degree: u64,
    pub data: PlaceData,
}

impl PlaceProfile {
    pub fn conductor(&self, p: u64, n: u32) -> Result<u64> {
        match &self.data {
            PlaceData::Finite(vp) => Ok(conductor_exponent(p, vp, n)),
            PlaceData::Procedural(s) => s.conductor(p, n),
        }
    }

    /// Smallest valuation present, if any.
    pub fn min_valuation(&self) -> Option<u32> {
        match &self.data {
            PlaceData::Finite(vp) => vp.min_valuation(),
            PlaceData::Procedural(s) => s.terms().first().map(|t| t.1),
        }
    }

    /// The maximiser of `i p^-v` over a finite profile.
    pub fn finite_max(&self, p: u64) -> Option<(u64, u32)> {
        match &self.data {
            PlaceData::Finite(vp) => vp
                .entries()
                .iter()
                .map(|(&i, &v)| (i, v))
                .max_by(|a, b| cmp_weight(p, *a, *b)),
            PlaceData::Procedural(_) => None,
        }
    }
}

/// Base genus, constant-field bound and per-place ramification data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub p: u64,
    pub g0: u64,
    pub n_c: u32,
    pub places: Vec<PlaceProfile>,
}

impl RamificationProfile {
    pub fn new(p: u64, g0: u64, n_c: u32, places: Vec<PlaceProfile>) -> Result<Self> {
        if !crate::ring::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        for pl in &places {
            if pl.degree == 0 {
                return Err(Error::InvalidInput(format!("place {} has degree 0", pl.label)));
            }
        }
        let profile = RamificationProfile { p, g0, n_c, places };
        if let Some(n_u) = profile.n_u() {
            if n_c > n_u {
                return Err(Error::InvalidInput(format!("n_c = {n_c} exceeds n_u = {n_u}")));
            }
        }
        Ok(profile)
    }

    /// Largest `n` with `K_n / K` unramified; `None` if nothing ramifies.
    pub fn n_u(&self) -> Option<u32> {
        self.places.iter().filter_map(|pl| pl.min_valuation()).min()
    }

    /// Smallest horizon among procedural places.
    pub fn horizon(&self) -> Option<u32> {
        self.places
            .iter()
            .filter_map(|pl| match &pl.data {
                PlaceData::Procedural(s) => Some(s.horizon()),
                PlaceData::Finite(_) => None,
            })
            .min()
    }

    pub fn is_finite(&self) -> bool {
        self.horizon().is_none()
    }

    pub fn conductors(&self, n: u32) -> Result<Vec<u64>> {
        self.places.iter().map(|pl| pl.conductor(self.p, n)).collect()
    }

    /// `sum_p [k_p : k] u_(p,n)`.
    pub fn conductor_degree(&self, n: u32) -> Result<BigInt> {
        let us = self.conductors(n)?;
        Ok(self
            .places
            .iter()
            .zip(us)
            .map(|(pl, u)| BigInt::from(pl.degree) * u)
            .sum())
    }

    pub fn labels(&self) -> Vec<String> {
        self.places.iter().map(|pl| pl.label.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_conductor() {
        let s = Stream::from_fn(2, 6, |k| Some(2u64.pow(k + 1) - 1), None).unwrap();
        for n in 1..=6 {
            assert_eq!(s.conductor(2, n).unwrap(), 2u64.pow(n));
        }
        assert_eq!(s.conductor(2, 7), Err(Error::HorizonTooSmall(6)));
        assert!(Stream::new(2, vec![(1, 1), (3, 1)], 4, None).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(cmp_weight(2, (3, 1), (1, 0)), Ordering::Greater);
        assert_eq!(cmp_weight(3, (2, 1), (1, 0)), Ordering::Less);
    }
}
