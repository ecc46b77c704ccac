//! Degrees of L-functions of characters of the tower.

use num_bigint::BigInt;

use super::profile::{PlaceData, RamificationProfile};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LDegree {
    pub degree: BigInt,
    /// `2 g0 - 2 + sum_j d_p (1 + i*_j p^(m_chi - v*_j - 1))`, when every
    /// place is finite and `m_chi` exceeds every `v*_j`.
    pub linear_form: Option<BigInt>,
    /// No place ramifies at level `m_chi`.
    pub degenerate: bool,
}

/// `deg L(chi, s) = 2 g0 - 2 + sum_p d_p u_(p, m_chi)` for a character of
/// order `p^m_chi`.
pub fn l_degree(profile: &RamificationProfile, m_chi: u32) -> Result<LDegree> {
    if m_chi == 0 {
        return Err(Error::InvalidInput("character order must be p^m with m >= 1".into()));
    }
    let p = profile.p;
    let base = BigInt::from(profile.g0) * 2 - 2;
    let cond = profile.conductor_degree(m_chi)?;
    let degenerate = cond == BigInt::from(0);
    let degree = &base + cond;
    let mut linear = Some(base);
    for pl in &profile.places {
        if !matches!(pl.data, PlaceData::Finite(_)) {
            linear = None;
            break;
        }
        if let Some((i, v)) = pl.finite_max(p) {
            if m_chi <= v {
                linear = None;
                break;
            }
            if let Some(l) = linear.as_mut() {
                *l += BigInt::from(pl.degree) * (BigInt::from(1) + BigInt::from(i) * BigInt::from(p).pow(m_chi - v - 1));
            }
        }
    }
    if let Some(l) = &linear {
        if *l != degree {
            return Err(Error::Internal(format!("linear L-degree {l} differs from conductor sum {degree}")));
        }
    }
    Ok(LDegree {
        degree,
        linear_form: linear,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cft::ValuationProfile;
    use crate::tower::profile::PlaceProfile;

    fn finite(label: &str, p: u64, e: &[(u64, u32)]) -> PlaceProfile {
        PlaceProfile {
            label: label.into(),
            degree: 1,
            data: PlaceData::Finite(ValuationProfile::new(p, e.iter().copied()).unwrap()),
        }
    }

    #[test]
    fn two_places() {
        let prof = RamificationProfile::new(3, 0, 0, vec![finite("0", 3, &[(1, 0)]), finite("inf", 3, &[(1, 0)])]).unwrap();
        for m in 1..5 {
            let l = l_degree(&prof, m).unwrap();
            assert_eq!(l.degree, BigInt::from(2 * 3u64.pow(m - 1)));
            assert_eq!(l.linear_form, Some(l.degree.clone()));
        }
    }

    #[test]
    fn degenerate() {
        let prof = RamificationProfile::new(2, 1, 0, vec![finite("inf", 2, &[(1, 2)])]).unwrap();
        let l = l_degree(&prof, 2).unwrap();
        assert!(l.degenerate);
        assert_eq!(l.degree, BigInt::from(0));
        assert_eq!(l.linear_form, None);
    }
}
