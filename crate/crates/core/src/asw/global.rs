//! Normal forms over the rational function field `k(X)`.

use std::collections::BTreeMap;

use super::{peel, AsReduction, AswBase, FormData};
use crate::algebra::{FFElem, Fq, UnramElem, ZpApprox};
use crate::error::{Error, Result};
use crate::poly::{Place, RatFunc, RatFuncRing};
use crate::ring::{Invertible, Ring, Zmod};
use crate::series::LaurentSeries;
use crate::witt::WittVec;

/// `c [alpha] + sum_x sum_i c_(x,i) [pi_x^-i]` with `pi_x = X - x` at finite
/// places and `pi = 1/X` at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalStandardForm {
    pub alpha: FFElem,
    pub c: ZpApprox,
    pub places: BTreeMap<Place, BTreeMap<u64, UnramElem>>,
}

impl GlobalStandardForm {
    pub fn precision(&self) -> usize {
        self.c.precision() as usize
    }

    pub(crate) fn to_data(&self) -> FormData<Place> {
        let mut terms = BTreeMap::new();
        for (place, ts) in &self.places {
            for (i, c) in ts {
                terms.insert((*place, *i), c.clone());
            }
        }
        FormData {
            alpha: self.alpha,
            c: self.c,
            terms,
        }
    }

    pub(crate) fn from_data(d: FormData<Place>) -> Self {
        let mut places: BTreeMap<Place, BTreeMap<u64, UnramElem>> = BTreeMap::new();
        for ((place, i), c) in d.terms {
            places.entry(place).or_default().insert(i, c);
        }
        GlobalStandardForm {
            alpha: d.alpha,
            c: d.c,
            places,
        }
    }

    /// The local terms at one place, as a local form with `c = 0`.
    pub fn local_terms(&self, place: &Place) -> BTreeMap<u64, UnramElem> {
        self.places.get(place).cloned().unwrap_or_default()
    }
}

/// Reduction of `f` in `k(X) / (F - 1)`; the witness is a rational function.
pub fn reduce_as_global(
    r: &RatFuncRing,
    f: &RatFunc<FFElem>,
    alpha: &FFElem,
) -> Result<AsReduction<Place, RatFunc<FFElem>>> {
    let k = r.field();
    let p = k.p();
    let (a0, parts) = r.principal_parts(f)?;
    let tr_alpha = k.trace(alpha);
    let m = k.trace(&a0) * Zmod::new(p, 1).inverse(&tr_alpha).expect("alpha has nonzero trace") % p;
    let rest = k.sub(&a0, &k.mul(&k.from_int(m as i64), alpha));
    let b = k
        .solve_artin_schreier(&rest)
        .ok_or_else(|| Error::Internal("trace-zero constant has no Artin-Schreier root".into()))?;
    let mut witness = r.constant(b);
    let mut terms = BTreeMap::new();
    for (place, pole_terms) in parts {
        let depth = pole_terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let mut coeffs = vec![k.zero(); depth + 1];
        for (e, a) in pole_terms {
            coeffs[e as usize] = a;
        }
        for e in (1..=depth).rev() {
            let a = coeffs[e];
            if a.is_zero() {
                continue;
            }
            if e as u64 % p != 0 {
                terms.insert((place, e as u64), a);
            } else {
                let root = k.inv_frobenius(&a);
                let e2 = e / p as usize;
                coeffs[e2] = k.add(&coeffs[e2], &root);
                let mono = r.mul(&r.constant(root), &r.inv_uniformizer_pow(&place, e2 as u64));
                witness = r.add(&witness, &mono);
            }
        }
    }
    Ok(AsReduction { m, terms, witness })
}

impl AswBase for RatFuncRing {
    type Place = Place;

    fn residue_field(&self) -> &Fq {
        self.field()
    }
    fn embed_constant(&self, a: &FFElem) -> RatFunc<FFElem> {
        self.constant(*a)
    }
    fn inv_uniformizer_pow(&self, place: &Place, i: u64) -> RatFunc<FFElem> {
        RatFuncRing::inv_uniformizer_pow(self, place, i)
    }
    fn reduce_one(&self, f: &RatFunc<FFElem>, alpha: &FFElem, _budget: i64) -> Result<AsReduction<Place, RatFunc<FFElem>>> {
        reduce_as_global(self, f, alpha)
    }
    fn vanishes(&self, f: &RatFunc<FFElem>, _coordinate: usize) -> Result<bool> {
        Ok(self.is_zero(f))
    }
}

/// The unique representative of `a` modulo `(F - 1) W_N(k(X))`; all poles
/// must lie at rational places.
pub fn reduce_global_p1(r: &RatFuncRing, a: &WittVec<RatFunc<FFElem>>) -> Result<GlobalStandardForm> {
    if a.is_empty() {
        return Err(Error::InvalidInput("Witt vector of length 0".into()));
    }
    let peeled = peel(r, a, 0, false)?.expect("unrestricted peeling always completes");
    Ok(GlobalStandardForm::from_data(peeled.form))
}

/// Exact evaluation of a global form in `W_N(k(X))`.
pub fn eval_global_form(r: &RatFuncRing, form: &GlobalStandardForm) -> WittVec<RatFunc<FFElem>> {
    super::eval_form_data(r, form.precision(), &form.to_data())
}

/// Coordinatewise expansion of `a` in the completion at `place`, known
/// below `T^known_to`.
pub fn completion(
    r: &RatFuncRing,
    a: &WittVec<RatFunc<FFElem>>,
    place: &Place,
    known_to: i64,
) -> Result<WittVec<LaurentSeries<FFElem>>> {
    let coords = a
        .coords()
        .iter()
        .map(|f| r.expand_at(f, place, known_to))
        .collect::<Result<Vec<_>>>()?;
    Ok(WittVec::from_coords(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asw::reduce_local;
    use crate::witt::WittRing;

    #[test]
    fn monomials_at_infinity() {
        let k = Fq::prime_field(2).unwrap();
        let r = RatFuncRing::new(&k);
        let w = WittRing::new(r.clone(), 2);
        let x = w.teichmuller(&r.x());
        let g = reduce_global_p1(&r, &x).unwrap();
        assert!(g.c.is_zero());
        assert_eq!(g.places.len(), 1);
        assert_eq!(g.places[&Place::Infinity][&1], w_teich(&k, 2));
        let x2 = w.teichmuller(&r.mul(&r.x(), &r.x()));
        assert_eq!(reduce_global_p1(&r, &x2).unwrap(), g);
        assert_eq!(reduce_global_p1(&r, &eval_global_form(&r, &g)).unwrap(), g);
    }

    fn w_teich(k: &Fq, n: usize) -> UnramElem {
        let mut coords = vec![k.zero(); n];
        coords[0] = k.one();
        WittVec::from_coords(coords)
    }

    #[test]
    fn pole_at_one() {
        let k = Fq::prime_field(2).unwrap();
        let r = RatFuncRing::new(&k);
        let w = WittRing::new(r.clone(), 2);
        let a = w.teichmuller(&r.inv_uniformizer_pow(&Place::Finite(k.one()), 1));
        let g = reduce_global_p1(&r, &a).unwrap();
        assert_eq!(g.places.keys().collect::<Vec<_>>(), vec![&Place::Finite(k.one())]);
        assert_eq!(g.places[&Place::Finite(k.one())][&1], w_teich(&k, 2));
    }

    #[test]
    fn agrees_with_completions() {
        let k = Fq::prime_field(3).unwrap();
        let r = RatFuncRing::new(&k);
        let w = WittRing::new(r.clone(), 2);
        let e = |v: &[i64]| v.iter().map(|&c| k.from_int(c)).collect::<Vec<_>>();
        let f0 = r.frac(e(&[1, 2, 0, 1]), e(&[0, 0, 1])).unwrap();
        let f1 = r.frac(e(&[2, 1]), e(&[1, 1])).unwrap();
        let a = w.vector(vec![f0, f1]).unwrap();
        let g = reduce_global_p1(&r, &a).unwrap();
        for place in [Place::Finite(k.zero()), Place::Finite(k.from_int(2)), Place::Infinity] {
            let local = reduce_local(&k, &completion(&r, &a, &place, 200).unwrap()).unwrap();
            assert_eq!(local.terms, g.local_terms(&place), "{place:?}");
        }
    }
}
