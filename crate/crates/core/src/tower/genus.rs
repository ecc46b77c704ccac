//! Genus sequences from conductor data, and the generic lower bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::profile::RamificationProfile;
use super::stability::{stability_classify, StabilityReport};
use crate::error::{Error, Result};

/// One level of a genus report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRow {
    pub n: u32,
    pub conductors: Vec<u64>,
    pub conductor_degree: BigInt,
    pub genus: BigInt,
    /// `None` below `n_u`.
    pub bound: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub p: u64,
    pub g0: u64,
    pub n_c: u32,
    pub n_u: u32,
    pub labels: Vec<String>,
    pub rows: Vec<LevelRow>,
    /// `None` for non-geometric profiles or when a stream is too short to
    /// classify.
    pub stability: Option<StabilityReport>,
}

pub(crate) fn phi(p: u64, j: u32) -> BigInt {
    let p = BigInt::from(p);
    if j == 0 {
        BigInt::one()
    } else {
        p.pow(j) - p.pow(j - 1)
    }
}

fn pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// `p^min(n_c, n) (2 g_n - 2)` summed afresh in rational arithmetic, then
/// solved for `g_n`.
pub(crate) fn genus_closed(profile: &RamificationProfile, n: u32) -> Result<BigInt> {
    let p = profile.p;
    let mut rhs = BigRational::from_integer(pow(p, n) * (BigInt::from(profile.g0) * 2 - 2));
    for pl in &profile.places {
        let mut s = BigInt::zero();
        for i in 1..=n {
            s += phi(p, i) * pl.conductor(p, i)?;
        }
        rhs += BigRational::from_integer(BigInt::from(pl.degree) * s);
    }
    let x = rhs / BigRational::from_integer(pow(p, profile.n_c.min(n)));
    if !x.is_integer() || x.to_integer().is_odd() {
        return Err(Error::NonIntegralGenus { level: n });
    }
    Ok(x.to_integer() / 2 + 1)
}

/// Same quantity, accumulated level by level in integers.
fn genus_incremental(profile: &RamificationProfile, n_max: u32) -> Result<Vec<BigInt>> {
    let p = profile.p;
    let mut base = BigInt::from(profile.g0) * 2 - 2;
    let mut acc = BigInt::zero();
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        base *= p;
        acc += phi(p, n) * profile.conductor_degree(n)?;
        let total: BigInt = &base + &acc;
        let (q, r) = total.div_rem(&pow(p, profile.n_c.min(n)));
        if !r.is_zero() || q.is_odd() {
            return Err(Error::NonIntegralGenus { level: n });
        }
        out.push(q / 2 + 1);
    }
    Ok(out)
}

/// The bound `g_n >= p^-n_c (p^n (2 g0 - 2) + p^n - p^n_u + p^n_u (p^(2(n - n_u)) - 1) / (p + 1)) / 2 + 1`,
/// valid for `n >= n_u`.
pub fn lower_bound(profile: &RamificationProfile, n: u32) -> Option<BigRational> {
    let n_u = profile.n_u()?;
    if n < n_u {
        return None;
    }
    let p = profile.p;
    let int = |x: BigInt| BigRational::from_integer(x);
    let geometric = int(pow(p, n_u) * (pow(p, 2 * (n - n_u)) - 1)) / int(BigInt::from(p + 1));
    let inner = int(pow(p, n) * (BigInt::from(profile.g0) * 2 - 2) + pow(p, n) - pow(p, n_u)) + geometric;
    Some(inner / int(pow(p, profile.n_c) * 2) + BigRational::one())
}

/// Conductors, genera and bounds for `1 <= n <= n_max`. Both genus paths
/// must agree and respect the bound.
pub fn genus_sequence(profile: &RamificationProfile, n_max: u32) -> Result<GenusReport> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let n_u = profile.n_u().ok_or(Error::ConstantTower)?;
    let incremental = genus_incremental(profile, n_max)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let genus = genus_closed(profile, n)?;
        let g2 = &incremental[n as usize - 1];
        if &genus != g2 {
            return Err(Error::Internal(format!("genus paths disagree at level {n}: {genus} vs {g2}")));
        }
        let bound = lower_bound(profile, n);
        if let Some(b) = &bound {
            if BigRational::from_integer(genus.clone()) < *b {
                return Err(Error::Internal(format!("g_{n} = {genus} is below the lower bound {b}")));
            }
        }
        if genus.is_negative() {
            return Err(Error::NonIntegralGenus { level: n });
        }
        rows.push(LevelRow {
            n,
            conductors: profile.conductors(n)?,
            conductor_degree: profile.conductor_degree(n)?,
            genus,
            bound,
        });
    }
    let stability = if profile.n_c == 0 {
        match stability_classify(profile) {
            Ok(s) => Some(s),
            Err(Error::HorizonTooSmall(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(GenusReport {
        p: profile.p,
        g0: profile.g0,
        n_c: profile.n_c,
        n_u,
        labels: profile.labels(),
        rows,
        stability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cft::ValuationProfile;
    use crate::tower::profile::{PlaceData, PlaceProfile};

    fn unit_root(p: u64, d: u64) -> RamificationProfile {
        let vp = ValuationProfile::new(p, [(d, 0)]).unwrap();
        let pl = PlaceProfile {
            label: "inf".into(),
            degree: 1,
            data: PlaceData::Finite(vp),
        };
        RamificationProfile::new(p, 0, 0, vec![pl]).unwrap()
    }

    fn genera(p: u64, d: u64) -> Vec<i64> {
        let r = genus_sequence(&unit_root(p, d), 3).unwrap();
        r.rows.iter().map(|row| i64::try_from(&row.genus).unwrap()).collect()
    }

    #[test]
    fn unit_root_tables() {
        assert_eq!(genera(2, 1), vec![0, 1, 7]);
        assert_eq!(genera(3, 1), vec![0, 6, 78]);
        assert_eq!(genera(2, 3), vec![1, 6, 28]);
    }

    #[test]
    fn bound_at_n_u_is_base_term() {
        let prof = unit_root(3, 2);
        let b = lower_bound(&prof, 0).unwrap();
        assert_eq!(b, BigRational::from_integer(BigInt::zero()));
    }

    #[test]
    fn inconsistent_profile() {
        let mut prof = unit_root(3, 1);
        prof.n_c = 1;
        assert_eq!(genus_sequence(&prof, 2), Err(Error::NonIntegralGenus { level: 1 }));
        assert!(RamificationProfile::new(3, 0, 1, prof.places.clone()).is_err());
    }
}
