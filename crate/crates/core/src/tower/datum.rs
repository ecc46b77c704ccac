//! Tower data over the projective line.

use std::collections::BTreeMap;

use super::profile::{PlaceData, PlaceProfile, RamificationProfile};
use crate::algebra::{FFElem, Fq, UnramElem, UnramRing, ZpApprox};
use crate::asw::{reduce_global_p1, GlobalStandardForm};
use crate::cft::ValuationProfile;
use crate::error::{Error, Result};
use crate::poly::{Place, RatFunc, RatFuncRing};
use crate::witt::WittVec;

/// A `Z_p`-tower over `k(X)` given by its normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerDatum {
    field: Fq,
    form: GlobalStandardForm,
    source: Option<WittVec<RatFunc<FFElem>>>,
}

/// `n_u = n_c`, or the precision as a sentinel when no place ramifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcNu {
    pub n_c: u32,
    pub n_u: u32,
    pub constant: bool,
    pub warning: Option<String>,
}

pub fn place_label(k: &Fq, place: &Place) -> String {
    match place {
        Place::Infinity => "inf".into(),
        Place::Finite(x) => {
            let c = x.coeffs(k.degree());
            if k.degree() == 1 {
                format!("x={}", c[0])
            } else {
                let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
                format!("x=[{}]", parts.join(","))
            }
        }
    }
}

impl TowerDatum {
    /// Validates keys, precision and normalisation.
    pub fn from_form(k: &Fq, form: GlobalStandardForm) -> Result<Self> {
        let d = TowerDatum {
            field: k.clone(),
            form,
            source: None,
        };
        d.validate()?;
        Ok(d)
    }

    /// Reduces a Witt vector over `k(X)` and keeps it as the source.
    pub fn from_witt(r: &RatFuncRing, a: &WittVec<RatFunc<FFElem>>) -> Result<Self> {
        let form = reduce_global_p1(r, a)?;
        let mut d = TowerDatum::from_form(r.field(), form)?;
        d.source = Some(a.clone());
        Ok(d)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn form(&self) -> &GlobalStandardForm {
        &self.form
    }

    pub fn source(&self) -> Option<&WittVec<RatFunc<FFElem>>> {
        self.source.as_ref()
    }

    pub fn precision(&self) -> usize {
        self.form.precision()
    }

    fn unram(&self) -> UnramRing {
        UnramRing::new(&self.field, self.precision())
    }

    fn validate(&self) -> Result<()> {
        let p = self.field.p();
        let n = self.precision();
        if n == 0 {
            return Err(Error::InvalidInput("precision must be at least 1".into()));
        }
        let ur = self.unram();
        for terms in self.form.places.values() {
            for (i, c) in terms {
                if *i == 0 || i % p == 0 {
                    return Err(Error::NotNormalized(format!("pole order {i} is not prime to p")));
                }
                ur.check(c)?;
            }
        }
        if self.form.c.is_zero() && self.pole_valuations().is_empty() {
            return Err(Error::NotNormalized("zero datum defines the trivial tower".into()));
        }
        let min = self.pole_valuations().into_iter().chain(self.form.c.valuation()).min();
        if min != Some(0) {
            return Err(Error::NotNormalized("datum is p times a deeper datum".into()));
        }
        Ok(())
    }

    /// All `v(c_(x,i)) < N`.
    fn pole_valuations(&self) -> Vec<u32> {
        let ur = self.unram();
        self.form
            .places
            .values()
            .flat_map(|t| t.values())
            .filter_map(|c| ur.valuation(c).map(|v| v as u32))
            .collect()
    }

    pub fn nc_nu(&self) -> NcNu {
        let n = self.precision() as u32;
        match self.pole_valuations().into_iter().min() {
            None => NcNu {
                n_c: n,
                n_u: n,
                constant: true,
                warning: None,
            },
            Some(m) => {
                let warning = self
                    .form
                    .c
                    .valuation()
                    .filter(|&vc| vc < m)
                    .map(|vc| format!("v(c) = {vc} is below min v(c_(x,i)) = {m}; n_c reported as computed"));
                NcNu {
                    n_c: m,
                    n_u: m,
                    constant: false,
                    warning,
                }
            }
        }
    }

    /// Profile over `P^1`; valid for levels up to the precision.
    pub fn profile(&self) -> Result<RamificationProfile> {
        let nn = self.nc_nu();
        if nn.constant {
            return Err(Error::ConstantTower);
        }
        let p = self.field.p();
        let ur = self.unram();
        let mut places = Vec::new();
        for (place, terms) in &self.form.places {
            let entries: Vec<(u64, u32)> = terms
                .iter()
                .filter_map(|(i, c)| ur.valuation(c).map(|v| (*i, v as u32)))
                .collect();
            if entries.is_empty() {
                continue;
            }
            places.push(PlaceProfile {
                label: place_label(&self.field, place),
                degree: 1,
                data: PlaceData::Finite(ValuationProfile::new(p, entries)?),
            });
        }
        RamificationProfile::new(p, 0, nn.n_c, places)
    }
}

/// The tower of `sum [b_i X^i]`, totally ramified at infinity.
pub fn unit_root_family(k: &Fq, coeffs: &BTreeMap<u64, FFElem>, n: usize) -> Result<TowerDatum> {
    let p = k.p();
    let d = coeffs
        .iter()
        .filter(|(_, b)| !b.is_zero())
        .map(|(i, _)| *i)
        .max()
        .ok_or(Error::BadDegree(0))?;
    if d % p == 0 {
        return Err(Error::BadDegree(d));
    }
    let ur = UnramRing::new(k, n);
    let mut terms: BTreeMap<u64, UnramElem> = BTreeMap::new();
    for (&i, b) in coeffs {
        if b.is_zero() {
            continue;
        }
        if i == 0 || i % p == 0 {
            return Err(Error::InvalidInput(format!("unit-root exponent {i} must be positive and prime to p")));
        }
        terms.insert(i, ur.teichmuller(b));
    }
    let form = GlobalStandardForm {
        alpha: k.choose_alpha(),
        c: ZpApprox::zero(p, n as u32),
        places: BTreeMap::from([(Place::Infinity, terms)]),
    };
    TowerDatum::from_form(k, form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::witt::WittRing;

    #[test]
    fn unit_root_profile() {
        let k = Fq::prime_field(2).unwrap();
        let d = unit_root_family(&k, &BTreeMap::from([(1, k.one())]), 3).unwrap();
        let prof = d.profile().unwrap();
        assert_eq!(prof.places.len(), 1);
        assert_eq!(prof.places[0].label, "inf");
        for n in 1..=3 {
            assert_eq!(prof.places[0].conductor(2, n).unwrap(), 1 + 2u64.pow(n - 1));
        }
        assert_eq!(d.nc_nu(), NcNu { n_c: 0, n_u: 0, constant: false, warning: None });
        assert_eq!(
            unit_root_family(&k, &BTreeMap::from([(2, k.one())]), 3),
            Err(Error::BadDegree(2))
        );
    }

    #[test]
    fn matches_reduction_of_source() {
        let k = Fq::prime_field(3).unwrap();
        let r = RatFuncRing::new(&k);
        let w = WittRing::new(r.clone(), 2);
        let x2 = r.mul(&r.x(), &r.x());
        let src = w.add(&w.teichmuller(&r.x()), &w.teichmuller(&r.mul(&r.constant(k.from_int(2)), &x2)));
        let from_src = TowerDatum::from_witt(&r, &src).unwrap();
        let coeffs = BTreeMap::from([(1, k.one()), (2, k.from_int(2))]);
        let direct = unit_root_family(&k, &coeffs, 2).unwrap();
        assert_eq!(from_src.form().places, direct.form().places);
    }

    #[test]
    fn normalisation_and_sentinel() {
        let k = Fq::prime_field(2).unwrap();
        let ur = UnramRing::new(&k, 3);
        let p_times = ur.from_integer(&2.into());
        let mut form = GlobalStandardForm {
            alpha: k.one(),
            c: ZpApprox::zero(2, 3),
            places: BTreeMap::from([(Place::Infinity, BTreeMap::from([(1, p_times.clone())]))]),
        };
        assert!(matches!(TowerDatum::from_form(&k, form.clone()), Err(Error::NotNormalized(_))));
        form.c = ZpApprox::new(2, 3, 1);
        let d = TowerDatum::from_form(&k, form.clone()).unwrap();
        let nn = d.nc_nu();
        assert_eq!((nn.n_c, nn.n_u), (1, 1));
        assert!(nn.warning.is_some());
        form.places.clear();
        let d = TowerDatum::from_form(&k, form).unwrap();
        assert!(d.nc_nu().constant);
        assert_eq!(d.profile(), Err(Error::ConstantTower));
    }
}
