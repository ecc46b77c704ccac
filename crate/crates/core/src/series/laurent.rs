//! Precision-tracked Laurent series over an arbitrary coefficient ring.

use crate::algebra::{FFElem, Fq};
use crate::error::{Error, Result};
use crate::ring::{Invertible, Ring, WittBase};

/// `sum_{e >= tail} coeffs[e - tail] T^e`, either exact or known below
/// `T^known_to`.
///
/// After normalisation the first stored coefficient is nonzero, trailing
/// zero coefficients are dropped and nothing is stored at or beyond
/// `known_to`. A zero series has no stored coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<E> {
    tail: i64,
    coeffs: Vec<E>,
    known_to: Option<i64>,
}

impl<E: Clone> LaurentSeries<E> {
    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// Stored coefficients, starting at exponent [`Self::tail`].
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// `None` when the series is exact.
    pub fn known_to(&self) -> Option<i64> {
        self.known_to
    }

    pub fn is_exact(&self) -> bool {
        self.known_to.is_none()
    }

    /// `T`-adic valuation; `None` when no nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.tail)
    }

    /// One past the last stored exponent.
    pub fn stored_end(&self) -> i64 {
        self.tail + self.coeffs.len() as i64
    }

    /// Exponents with stored (possibly nonzero) coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &E)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.tail + k as i64, c))
    }

    /// Whether the coefficient at `e` is determined.
    pub fn is_known(&self, e: i64) -> bool {
        self.known_to.map_or(true, |k| e < k)
    }
}

/// Arithmetic context for Laurent series over `R`.
///
/// `rel_prec` is the relative precision used when an exact series with an
/// infinite inverse has to be inverted.
#[derive(Clone, Debug)]
pub struct LaurentRing<R> {
    coeff: R,
    rel_prec: i64,
}

pub const DEFAULT_REL_PREC: i64 = 64;

impl<R: Ring> LaurentRing<R> {
    pub fn new(coeff: R) -> Self {
        LaurentRing {
            coeff,
            rel_prec: DEFAULT_REL_PREC,
        }
    }

    pub fn with_rel_prec(coeff: R, rel_prec: i64) -> Self {
        LaurentRing { coeff, rel_prec }
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeff
    }

    pub fn rel_prec(&self) -> i64 {
        self.rel_prec
    }

    /// Builds and normalises a series from raw parts.
    pub fn series(&self, tail: i64, coeffs: Vec<R::Elem>, known_to: Option<i64>) -> LaurentSeries<R::Elem> {
        let mut s = LaurentSeries {
            tail,
            coeffs,
            known_to,
        };
        self.normalize(&mut s);
        s
    }

    pub fn exact(&self, tail: i64, coeffs: Vec<R::Elem>) -> LaurentSeries<R::Elem> {
        self.series(tail, coeffs, None)
    }

    pub fn monomial(&self, c: R::Elem, e: i64) -> LaurentSeries<R::Elem> {
        self.series(e, vec![c], None)
    }

    pub fn constant(&self, c: R::Elem) -> LaurentSeries<R::Elem> {
        self.monomial(c, 0)
    }

    /// `O(T^k)`.
    pub fn big_o(&self, k: i64) -> LaurentSeries<R::Elem> {
        LaurentSeries {
            tail: k,
            coeffs: Vec::new(),
            known_to: Some(k),
        }
    }

    fn normalize(&self, s: &mut LaurentSeries<R::Elem>) {
        if let Some(k) = s.known_to {
            let keep = (k - s.tail).clamp(0, s.coeffs.len() as i64) as usize;
            s.coeffs.truncate(keep);
        }
        while s.coeffs.last().is_some_and(|c| self.coeff.is_zero(c)) {
            s.coeffs.pop();
        }
        let lead = s.coeffs.iter().position(|c| !self.coeff.is_zero(c));
        match lead {
            Some(0) => {}
            Some(i) => {
                s.coeffs.drain(..i);
                s.tail += i as i64;
            }
            None => {
                s.coeffs.clear();
                s.tail = s.known_to.unwrap_or(0);
            }
        }
    }

    /// Lowers the precision bound to `bound` (no-op if already lower).
    pub fn truncate(&self, s: &LaurentSeries<R::Elem>, bound: i64) -> LaurentSeries<R::Elem> {
        let known_to = Some(s.known_to.map_or(bound, |k| k.min(bound)));
        let mut out = LaurentSeries {
            tail: s.tail,
            coeffs: s.coeffs.clone(),
            known_to,
        };
        self.normalize(&mut out);
        out
    }

    /// Coefficient of `T^e`; fails when `e` lies beyond the known precision.
    pub fn coeff(&self, s: &LaurentSeries<R::Elem>, e: i64) -> Result<R::Elem> {
        if !s.is_known(e) {
            return Err(Error::exhausted(e, s.known_to.unwrap()));
        }
        Ok(self.coeff_unchecked(s, e))
    }

    fn coeff_unchecked(&self, s: &LaurentSeries<R::Elem>, e: i64) -> R::Elem {
        if e < s.tail || e >= s.stored_end() {
            self.coeff.zero()
        } else {
            s.coeffs[(e - s.tail) as usize].clone()
        }
    }

    /// Coefficient of `T^-1`.
    pub fn residue(&self, s: &LaurentSeries<R::Elem>) -> Result<R::Elem> {
        self.coeff(s, -1)
    }

    /// Formal derivative `sum e a_e T^(e-1)`.
    pub fn derivative(&self, s: &LaurentSeries<R::Elem>) -> LaurentSeries<R::Elem> {
        let coeffs = s
            .terms()
            .map(|(e, c)| self.coeff.scale(e, c))
            .collect();
        self.series(s.tail - 1, coeffs, s.known_to.map(|k| k - 1))
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, s: &LaurentSeries<R::Elem>, k: i64) -> LaurentSeries<R::Elem> {
        LaurentSeries {
            tail: s.tail + k,
            coeffs: s.coeffs.clone(),
            known_to: s.known_to.map(|b| b + k),
        }
    }

    pub fn scale_by(&self, c: &R::Elem, s: &LaurentSeries<R::Elem>) -> LaurentSeries<R::Elem> {
        let coeffs = s.coeffs.iter().map(|x| self.coeff.mul(c, x)).collect();
        self.series(s.tail, coeffs, s.known_to)
    }

    /// Applies a ring map coefficientwise.
    pub fn map<S: Ring>(
        &self,
        target: &LaurentRing<S>,
        s: &LaurentSeries<R::Elem>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> LaurentSeries<S::Elem> {
        target.series(s.tail, s.coeffs.iter().map(f).collect(), s.known_to)
    }

    /// Inverse of a series whose leading coefficient is a unit.
    pub fn invert(&self, u: &LaurentSeries<R::Elem>) -> Result<LaurentSeries<R::Elem>>
    where
        R: Invertible,
    {
        let v = u.valuation().ok_or(Error::NotAUnit)?;
        let c0inv = self.coeff.inverse(&u.coeffs[0]).ok_or(Error::NotAUnit)?;
        if u.is_exact() && u.coeffs.len() == 1 {
            return Ok(self.monomial(c0inv, -v));
        }
        let rel = match u.known_to {
            Some(k) => k - v,
            None => self.rel_prec,
        };
        let rel = rel.max(0) as usize;
        let mut out: Vec<R::Elem> = Vec::with_capacity(rel);
        for n in 0..rel {
            if n == 0 {
                out.push(c0inv.clone());
                continue;
            }
            let mut acc = self.coeff.zero();
            for k in 1..=n.min(u.coeffs.len() - 1) {
                acc = self.coeff.add(&acc, &self.coeff.mul(&u.coeffs[k], &out[n - k]));
            }
            out.push(self.coeff.neg(&self.coeff.mul(&c0inv, &acc)));
        }
        Ok(self.series(-v, out, Some(-v + rel as i64)))
    }

    pub fn div(
        &self,
        a: &LaurentSeries<R::Elem>,
        b: &LaurentSeries<R::Elem>,
    ) -> Result<LaurentSeries<R::Elem>>
    where
        R: Invertible,
    {
        Ok(self.mul(a, &self.invert(b)?))
    }

    /// Lowest exponent of the principal part and whether the constant term
    /// is known, as a convenience for reductions.
    pub fn pole_order(&self, s: &LaurentSeries<R::Elem>) -> i64 {
        s.valuation().map_or(0, |v| (-v).max(0))
    }
}

impl<R: Ring> Ring for LaurentRing<R> {
    type Elem = LaurentSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        LaurentSeries {
            tail: 0,
            coeffs: Vec::new(),
            known_to: None,
        }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.coeff.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.coeff.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let known_to = match (a.known_to, b.known_to) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if a.coeffs.is_empty() {
            return self.series(b.tail, b.coeffs.clone(), known_to);
        }
        if b.coeffs.is_empty() {
            return self.series(a.tail, a.coeffs.clone(), known_to);
        }
        let lo = a.tail.min(b.tail);
        let mut hi = a.stored_end().max(b.stored_end());
        if let Some(k) = known_to {
            hi = hi.min(k);
        }
        let coeffs = (lo..hi.max(lo))
            .map(|e| {
                self.coeff
                    .add(&self.coeff_unchecked(a, e), &self.coeff_unchecked(b, e))
            })
            .collect();
        self.series(lo, coeffs, known_to)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LaurentSeries {
            tail: a.tail,
            coeffs: a.coeffs.iter().map(|c| self.coeff.neg(c)).collect(),
            known_to: a.known_to,
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let a_exact_zero = a.is_exact() && a.coeffs.is_empty();
        let b_exact_zero = b.is_exact() && b.coeffs.is_empty();
        if a_exact_zero || b_exact_zero {
            return self.zero();
        }
        // A zero inexact series O(T^k) behaves as valuation k.
        let va = if a.coeffs.is_empty() { a.known_to.unwrap() } else { a.tail };
        let vb = if b.coeffs.is_empty() { b.known_to.unwrap() } else { b.tail };
        let bound_a = a.known_to.map(|k| k + vb);
        let bound_b = b.known_to.map(|k| k + va);
        let known_to = match (bound_a, bound_b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.big_o(known_to.unwrap());
        }
        let tail = a.tail + b.tail;
        let mut len = a.coeffs.len() + b.coeffs.len() - 1;
        if let Some(k) = known_to {
            len = len.min((k - tail).max(0) as usize);
        }
        let mut out = vec![self.coeff.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if self.coeff.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = self.coeff.add(&out[i + j], &self.coeff.mul(x, y));
            }
        }
        self.series(tail, out, known_to)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn from_bigint(&self, n: &num_bigint::BigInt) -> Self::Elem {
        self.constant(self.coeff.from_bigint(n))
    }
}

impl<R: WittBase> WittBase for LaurentRing<R> {
    type Lift = LaurentRing<R::Lift>;

    fn prime(&self) -> u64 {
        self.coeff.prime()
    }

    fn has_char_p(&self) -> bool {
        self.coeff.has_char_p()
    }

    fn lift_ring(&self, len: usize) -> Self::Lift {
        LaurentRing::with_rel_prec(self.coeff.lift_ring(len), self.rel_prec)
    }

    fn lift(&self, lift: &Self::Lift, a: &Self::Elem) -> <Self::Lift as Ring>::Elem {
        self.map(lift, a, |c| self.coeff.lift(lift.coeff_ring(), c))
    }

    fn reduce(&self, lift: &Self::Lift, a: &<Self::Lift as Ring>::Elem) -> Self::Elem {
        lift.map(self, a, |c| self.coeff.reduce(lift.coeff_ring(), c))
    }

    fn div_p(
        &self,
        lift: &Self::Lift,
        a: &<Self::Lift as Ring>::Elem,
    ) -> Option<<Self::Lift as Ring>::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .map(|c| self.coeff.div_p(lift.coeff_ring(), c))
            .collect::<Option<Vec<_>>>()?;
        Some(lift.series(a.tail, coeffs, a.known_to))
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        if !self.has_char_p() {
            return self.pow(a, self.prime());
        }
        let p = self.prime() as i64;
        let mut coeffs = vec![self.coeff.zero(); if a.coeffs.is_empty() { 0 } else { (a.coeffs.len() - 1) * p as usize + 1 }];
        for (k, c) in a.coeffs.iter().enumerate() {
            coeffs[k * p as usize] = self.coeff.frobenius(c);
        }
        self.series(a.tail * p, coeffs, a.known_to.map(|k| k * p))
    }
}

impl LaurentRing<Fq> {
    /// The unique `u` with `u^p = s`; every exponent in the support of `s`
    /// must be divisible by `p`.
    pub fn p_th_root(&self, s: &LaurentSeries<FFElem>) -> Result<LaurentSeries<FFElem>> {
        let k = self.coeff_ring();
        let p = k.p() as i64;
        let mut terms = Vec::new();
        for (e, c) in s.terms() {
            if c.is_zero() {
                continue;
            }
            if e.rem_euclid(p) != 0 {
                return Err(Error::NotAPthPower);
            }
            terms.push((e / p, k.inv_frobenius(c)));
        }
        let known_to = s.known_to.map(|b| (b + p - 1).div_euclid(p));
        Ok(self.from_terms(terms, known_to))
    }
}

impl<R: Ring> LaurentRing<R> {
    /// Builds a series from sparse `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (i64, R::Elem)>,
        known_to: Option<i64>,
    ) -> LaurentSeries<R::Elem> {
        let terms: Vec<(i64, R::Elem)> = terms.into_iter().collect();
        if terms.is_empty() {
            return match known_to {
                Some(k) => self.big_o(k),
                None => self.zero(),
            };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![self.coeff.zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = self.coeff.add(slot, &c);
        }
        self.series(lo, coeffs, known_to)
    }

    /// Principal part plus constant term: all coefficients below `T^1`.
    pub fn non_positive_part(&self, s: &LaurentSeries<R::Elem>) -> Result<LaurentSeries<R::Elem>> {
        if !s.is_known(0) {
            return Err(Error::exhausted(0, s.known_to.unwrap()));
        }
        let terms: Vec<_> = s
            .terms()
            .filter(|(e, _)| *e <= 0)
            .map(|(e, c)| (e, c.clone()))
            .collect();
        Ok(self.from_terms(terms, None))
    }

    /// Strictly positive part, carrying the precision of `s`.
    pub fn positive_part(&self, s: &LaurentSeries<R::Elem>) -> LaurentSeries<R::Elem> {
        let terms: Vec<_> = s
            .terms()
            .filter(|(e, _)| *e > 0)
            .map(|(e, c)| (e, c.clone()))
            .collect();
        self.from_terms(terms, s.known_to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zmod;

    fn f2() -> LaurentRing<Fq> {
        LaurentRing::new(Fq::prime_field(2).unwrap())
    }

    fn ones(r: &LaurentRing<Fq>, tail: i64, bits: &[u64], known_to: Option<i64>) -> LaurentSeries<FFElem> {
        let k = r.coeff_ring().clone();
        r.series(tail, bits.iter().map(|&b| k.from_int(b as i64)).collect(), known_to)
    }

    #[test]
    fn residue_and_derivative() {
        let r = f2();
        let k = r.coeff_ring().clone();
        let inv_t = r.monomial(k.one(), -1);
        assert_eq!(r.residue(&inv_t).unwrap(), k.one());
        assert_eq!(r.residue(&r.one()).unwrap(), k.zero());
        let q = LaurentRing::new(Zmod::new(7, 1));
        let d = q.derivative(&q.monomial(1, -1));
        assert_eq!(d, q.monomial(6, -2));
    }

    #[test]
    fn long_division_over_f2() {
        // (1 + T + T^2) / (1 + T) = 1 + T^2 + T^3 + O(T^4)
        let r = f2();
        let num = ones(&r, 0, &[1, 1, 1], Some(4));
        let den = ones(&r, 0, &[1, 1], None);
        let q = r.div(&num, &den).unwrap();
        assert_eq!(q, ones(&r, 0, &[1, 0, 1, 1], Some(4)));
    }

    #[test]
    fn precision_is_pessimistic() {
        let r = f2();
        let a = ones(&r, -3, &[1, 0, 1], Some(5));
        let b = ones(&r, -2, &[1, 1], Some(6));
        let c = r.mul(&a, &b);
        // min(5 + (-2), 6 + (-3)) = 3
        assert_eq!(c.known_to(), Some(3));
        assert!(r.coeff(&c, 3).is_err());
        assert!(matches!(
            r.coeff(&c, 10),
            Err(Error::PrecisionExhausted { exponent: 10, known_to: 3, .. })
        ));
    }

    #[test]
    fn p_th_roots() {
        let r = LaurentRing::new(Fq::with_degree(3, 2).unwrap());
        let k = r.coeff_ring().clone();
        let u = r.series(-2, vec![k.element_at(5), k.zero(), k.element_at(7)], Some(4));
        let up = r.frobenius(&u);
        assert_eq!(r.p_th_root(&up).unwrap(), u);
        // generic multiplication only knows u^3 below T^0
        assert_eq!(r.pow(&u, 3), r.truncate(&up, 0));
        let bad = r.monomial(k.one(), 1);
        assert_eq!(r.p_th_root(&bad), Err(Error::NotAPthPower));
    }

    #[test]
    fn invert_requires_unit_leading_coefficient() {
        let r = LaurentRing::new(Zmod::new(3, 2));
        let s = r.exact(0, vec![3, 1]);
        assert_eq!(r.invert(&s), Err(Error::NotAUnit));
        let u = r.exact(1, vec![2, 1]);
        let inv = r.invert(&u).unwrap();
        let prod = r.mul(&u, &inv);
        assert_eq!(prod.valuation(), Some(0));
        assert_eq!(r.coeff(&prod, 0).unwrap(), 1);
        for e in 1..prod.known_to().unwrap() {
            assert_eq!(r.coeff(&prod, e).unwrap(), 0);
        }
    }
}
