//! Galois trace of Witt vectors over finite fields, and evaluation of Witt
//! vectors over `k(X)` at points.

use super::{WittRing, WittVec};
use crate::algebra::{Embedding, FFElem};
use crate::error::{Error, Result};
use crate::poly::{RatFunc, RatFuncRing};
use crate::ring::Ring;

/// `sum_{j < [ext:base]} F_base^j(a)`, returned with coordinates in `base`.
pub fn trace_witt(a: &WittVec<FFElem>, emb: &Embedding) -> Result<WittVec<FFElem>> {
    let ext = emb.ext();
    let w = WittRing::new(ext.clone(), a.len());
    let step = emb.base().degree() as i64;
    let conj: Vec<_> = (0..emb.degree() as i64)
        .map(|j| a.map(|c| ext.frobenius_pow(c, j * step)))
        .collect();
    let t = w.sum(conj.iter());
    let coords = t
        .coords()
        .iter()
        .map(|c| emb.restrict(c).ok_or(Error::NotInBaseField))
        .collect::<Result<Vec<_>>>()?;
    Ok(WittVec::from_coords(coords))
}

/// Coordinatewise evaluation `a(z)` of a Witt vector over `k(X)` at a point
/// `z` of an extension of `k`.
pub fn evaluate(
    field: &RatFuncRing,
    a: &WittVec<RatFunc<FFElem>>,
    emb: &Embedding,
    z: &FFElem,
) -> Result<WittVec<FFElem>> {
    if field.field() != emb.base() {
        return Err(Error::SpecMismatch);
    }
    let ext = emb.ext();
    let eval = |poly: &[FFElem]| {
        poly.iter()
            .rev()
            .fold(ext.zero(), |acc, c| ext.add(&ext.mul(&acc, z), &emb.apply(c)))
    };
    let coords = a
        .coords()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let d = eval(f.den());
            if d.is_zero() {
                return Err(Error::PoleAtPoint { coordinate: i });
            }
            ext.div(&eval(f.num()), &d)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WittVec::from_coords(coords))
}

/// `W_n(F_p) = Z/p^n`: the integer represented by a vector over the prime
/// field.
pub fn prime_witt_value(p: u64, a: &WittVec<FFElem>) -> u64 {
    let zm = crate::ring::Zmod::new(p, a.len() as u32);
    let lifts: Vec<u64> = a.coords().iter().map(|c| c.constant_term()).collect();
    *super::ghost(&zm, p, &WittVec::from_coords(lifts))
        .last()
        .expect("nonempty vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, Fq};
    use crate::witt::oracle::UniversalPolys;

    fn f4() -> Fq {
        Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn trace_of_teichmuller_w() {
        let k = f4();
        let f2 = Fq::prime_field(2).unwrap();
        let emb = Embedding::new(&f2, &k).unwrap();
        let w = WittRing::new(k.clone(), 2);
        let tw = k.elem(&[0, 1]).unwrap();
        let t = trace_witt(&w.teichmuller(&tw), &emb).unwrap();
        assert_eq!(t.coords(), &[f2.one(), f2.one()]);
        // oracle: [w] + [w^2] through the universal sum polynomials
        let u = UniversalPolys::new(2, 2).unwrap();
        let s = u
            .add(&k, &w.teichmuller(&tw), &w.teichmuller(&k.mul(&tw, &tw)))
            .unwrap();
        assert_eq!(s.coords(), &[k.one(), k.one()]);
        assert_eq!(prime_witt_value(2, &t), 3);
    }

    #[test]
    fn evaluation_and_poles() {
        let k = f4();
        let f2 = Fq::prime_field(2).unwrap();
        let r = RatFuncRing::new(&f2);
        let emb = Embedding::new(&f2, &k).unwrap();
        let w = WittRing::new(r.clone(), 2);
        let x = w.teichmuller(&r.x());
        let tw = k.elem(&[0, 1]).unwrap();
        let v = evaluate(&r, &x, &emb, &tw).unwrap();
        assert_eq!(v.coords(), &[tw, k.zero()]);
        let pole = w.teichmuller(&r.inv(&r.add(&r.x(), &r.one())).unwrap());
        assert_eq!(
            evaluate(&r, &pole, &emb, &k.one()),
            Err(Error::PoleAtPoint { coordinate: 0 })
        );
    }
}
