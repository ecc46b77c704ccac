//! Truncated `p`-typical Witt vectors.
//!
//! Sums and products are computed through the ghost map of a lift: the
//! coordinates are lifted to a ring `L` in which `p` is not a zero divisor
//! (modulo the working precision), the ghost components are combined there,
//! and the result is recovered by successive exact divisions by `p`. The
//! universal-polynomial [`oracle`] provides an independent route for tests.

pub mod oracle;
mod trace;

pub use trace::{evaluate, prime_witt_value, trace_witt};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{ExactDivision, Ring, WittBase};

/// A Witt vector `(r_0, ..., r_{N-1})` of fixed length.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVec<E> {
    coords: Vec<E>,
}

impl<E: Clone> WittVec<E> {
    pub fn from_coords(coords: Vec<E>) -> Self {
        WittVec { coords }
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> &E {
        &self.coords[i]
    }

    /// Functoriality: applies a ring map to every coordinate.
    pub fn map<F, T: Clone>(&self, f: F) -> WittVec<T>
    where
        F: FnMut(&E) -> T,
    {
        WittVec {
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

/// Arithmetic context for `W_N(A)`.
#[derive(Clone, Debug)]
pub struct WittRing<R: WittBase> {
    base: R,
    lift: R::Lift,
    len: usize,
    p: u64,
}

type LiftElem<R> = <<R as WittBase>::Lift as Ring>::Elem;

impl<R: WittBase> WittRing<R> {
    pub fn new(base: R, len: usize) -> Self {
        assert!(len >= 1, "Witt vectors need at least one coordinate");
        let lift = base.lift_ring(len);
        let p = base.prime();
        WittRing { base, lift, len, p }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn lift_ring(&self) -> &R::Lift {
        &self.lift
    }

    pub fn vector(&self, coords: Vec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if coords.len() != self.len {
            return Err(Error::LengthMismatch(coords.len(), self.len));
        }
        Ok(WittVec { coords })
    }

    pub fn check(&self, a: &WittVec<R::Elem>) -> Result<()> {
        if a.len() != self.len {
            return Err(Error::LengthMismatch(a.len(), self.len));
        }
        Ok(())
    }

    pub fn zero(&self) -> WittVec<R::Elem> {
        WittVec {
            coords: vec![self.base.zero(); self.len],
        }
    }

    pub fn one(&self) -> WittVec<R::Elem> {
        self.teichmuller(&self.base.one())
    }

    /// `[r] = (r, 0, 0, ...)`.
    pub fn teichmuller(&self, r: &R::Elem) -> WittVec<R::Elem> {
        let mut coords = vec![self.base.zero(); self.len];
        coords[0] = r.clone();
        WittVec { coords }
    }

    pub fn is_zero(&self, a: &WittVec<R::Elem>) -> bool {
        a.coords.iter().all(|c| self.base.is_zero(c))
    }

    /// Index of the first nonzero coordinate (the `V`-adic valuation).
    pub fn v_valuation(&self, a: &WittVec<R::Elem>) -> Option<usize> {
        a.coords.iter().position(|c| !self.base.is_zero(c))
    }

    /// Ghost components of the coordinatewise lift, valid modulo `p^(i+1)`
    /// in component `i`.
    pub fn lifted_ghost(&self, a: &WittVec<R::Elem>) -> Vec<LiftElem<R>> {
        let lifts: Vec<_> = a
            .coords
            .iter()
            .map(|c| self.base.lift(&self.lift, c))
            .collect();
        self.ghost_of_lifts(&lifts)
    }

    fn ghost_of_lifts(&self, lifts: &[LiftElem<R>]) -> Vec<LiftElem<R>> {
        let l = &self.lift;
        let n = lifts.len();
        // powers[j][k] = lift_j^(p^k)
        let mut powers: Vec<Vec<LiftElem<R>>> = Vec::with_capacity(n);
        for (j, x) in lifts.iter().enumerate() {
            let mut row = Vec::with_capacity(n - j);
            row.push(x.clone());
            for k in 1..n - j {
                let prev = &row[k - 1];
                row.push(l.pow(prev, self.p));
            }
            powers.push(row);
        }
        (0..n)
            .map(|i| {
                let mut acc = l.zero();
                let mut pj = l.one();
                for (j, row) in powers.iter().enumerate().take(i + 1) {
                    acc = l.add(&acc, &l.mul(&pj, &row[i - j]));
                    if j < i {
                        pj = l.scale(self.p as i64, &pj);
                    }
                }
                acc
            })
            .collect()
    }

    /// Recovers the Witt vector from lifted ghost components.
    ///
    /// Panics if a division by `p` is not exact: for ghost vectors produced
    /// by ring operations that indicates an arithmetic bug.
    pub fn from_lifted_ghost(&self, ghost: &[LiftElem<R>]) -> WittVec<R::Elem> {
        let l = &self.lift;
        let p = self.p;
        let mut coords: Vec<R::Elem> = Vec::with_capacity(self.len);
        let mut lifts: Vec<LiftElem<R>> = Vec::with_capacity(self.len);
        // powers of already recovered coordinates, extended as we go
        let mut powers: Vec<Vec<LiftElem<R>>> = Vec::with_capacity(self.len);
        for (i, g) in ghost.iter().enumerate().take(self.len) {
            let mut acc = g.clone();
            let mut pj = l.one();
            for (j, row) in powers.iter_mut().enumerate() {
                while row.len() <= i - j {
                    let next = l.pow(row.last().unwrap(), p);
                    row.push(next);
                }
                acc = l.sub(&acc, &l.mul(&pj, &row[i - j]));
                pj = l.scale(p as i64, &pj);
            }
            for _ in 0..i {
                acc = self
                    .base
                    .div_p(l, &acc)
                    .unwrap_or_else(|| panic!("Witt arithmetic: inexact division by p in component {i}"));
            }
            let c = self.base.reduce(l, &acc);
            let lifted = self.base.lift(l, &c);
            coords.push(c);
            lifts.push(lifted.clone());
            powers.push(vec![lifted]);
        }
        WittVec { coords }
    }

    fn combine(
        &self,
        a: &WittVec<R::Elem>,
        b: &WittVec<R::Elem>,
        op: impl Fn(&R::Lift, &LiftElem<R>, &LiftElem<R>) -> LiftElem<R>,
    ) -> WittVec<R::Elem> {
        assert_eq!(a.len(), self.len, "Witt vector length mismatch");
        assert_eq!(b.len(), self.len, "Witt vector length mismatch");
        let ga = self.lifted_ghost(a);
        let gb = self.lifted_ghost(b);
        let g: Vec<_> = ga
            .iter()
            .zip(&gb)
            .map(|(x, y)| op(&self.lift, x, y))
            .collect();
        self.from_lifted_ghost(&g)
    }

    pub fn add(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        if self.is_zero(a) {
            return b.clone();
        }
        if self.is_zero(b) {
            return a.clone();
        }
        self.combine(a, b, |l, x, y| l.add(x, y))
    }

    pub fn sub(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        if self.is_zero(b) {
            return a.clone();
        }
        self.combine(a, b, |l, x, y| l.sub(x, y))
    }

    pub fn mul(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        self.combine(a, b, |l, x, y| l.mul(x, y))
    }

    /// Additive inverse through the ghost map (for `p = 2` this is not
    /// coordinatewise negation).
    pub fn neg(&self, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let g: Vec<_> = self
            .lifted_ghost(a)
            .iter()
            .map(|x| self.lift.neg(x))
            .collect();
        self.from_lifted_ghost(&g)
    }

    /// Multiplication by an integer.
    pub fn scalar_mul(&self, m: &BigInt, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let c = self.lift.from_bigint(m);
        let g: Vec<_> = self
            .lifted_ghost(a)
            .iter()
            .map(|x| self.lift.mul(&c, x))
            .collect();
        self.from_lifted_ghost(&g)
    }

    /// The image of an integer under `Z -> W_N(A)`.
    pub fn from_integer(&self, m: &BigInt) -> WittVec<R::Elem> {
        self.scalar_mul(m, &self.one())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a WittVec<R::Elem>>) -> WittVec<R::Elem>
    where
        R::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Verschiebung `(r_0, r_1, ...) -> (0, r_0, r_1, ...)`, truncated.
    pub fn verschiebung(&self, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let mut coords = Vec::with_capacity(self.len);
        coords.push(self.base.zero());
        coords.extend(a.coords.iter().take(self.len - 1).cloned());
        WittVec { coords }
    }

    pub fn verschiebung_pow(&self, a: &WittVec<R::Elem>, k: usize) -> WittVec<R::Elem> {
        (0..k).fold(a.clone(), |acc, _| self.verschiebung(&acc))
    }

    /// Coordinatewise `p`-th power; only a ring map in characteristic `p`.
    pub fn frobenius(&self, a: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        if !self.base.has_char_p() {
            return Err(Error::WrongCharacteristic);
        }
        Ok(a.map(|c| self.base.frobenius(c)))
    }

    /// The Artin-Schreier-Witt operator `F(a) - a`.
    pub fn wp(&self, a: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        Ok(self.sub(&self.frobenius(a)?, a))
    }

    /// Restriction to the first `n` coordinates, `W_N -> W_n`.
    pub fn truncate(&self, a: &WittVec<R::Elem>, n: usize) -> WittVec<R::Elem> {
        WittVec {
            coords: a.coords[..n.min(a.len())].to_vec(),
        }
    }
}

/// Ghost components `w_i = sum_{j <= i} p^j r_j^(p^(i-j))` over any ring.
pub fn ghost<R: Ring>(ring: &R, p: u64, a: &WittVec<R::Elem>) -> Vec<R::Elem> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let mut acc = ring.zero();
            let mut pj = ring.one();
            for j in 0..=i {
                let e = p.pow((i - j) as u32);
                acc = ring.add(&acc, &ring.mul(&pj, &ring.pow(&a.coords[j], e)));
                pj = ring.scale(p as i64, &pj);
            }
            acc
        })
        .collect()
}

/// Inverse of [`ghost`] over a ring with exact division by `p`.
///
/// Fails with [`Error::NotDivisible`] when the vector is not a ghost image.
/// Over `Z/p^M` coordinate `i` of the result is determined modulo `p^(M-i)`.
pub fn from_ghost<R: ExactDivision>(ring: &R, p: u64, g: &[R::Elem]) -> Result<WittVec<R::Elem>> {
    let mut coords: Vec<R::Elem> = Vec::with_capacity(g.len());
    for (i, gi) in g.iter().enumerate() {
        let mut acc = gi.clone();
        let mut pj = ring.one();
        for (j, c) in coords.iter().enumerate() {
            let e = p.pow((i - j) as u32);
            acc = ring.sub(&acc, &ring.mul(&pj, &ring.pow(c, e)));
            pj = ring.scale(p as i64, &pj);
        }
        let divisor = p.pow(i as u32);
        let c = ring
            .div_exact(&acc, divisor)
            .ok_or(Error::NotDivisible { index: i })?;
        coords.push(c);
    }
    Ok(WittVec { coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, Fq};
    use crate::ring::{Integers, Zmod};
    use crate::series::LaurentRing;

    #[test]
    fn ghost_of_two_coordinates() {
        let z8 = Zmod::new(2, 3);
        let g = ghost(&z8, 2, &WittVec::from_coords(vec![1, 1]));
        assert_eq!(g, vec![1, 3]);
        let back = from_ghost(&z8, 2, &g).unwrap();
        assert_eq!(back.coords(), &[1, 1]);
        assert_eq!(
            from_ghost(&z8, 2, &[0, 1]),
            Err(Error::NotDivisible { index: 1 })
        );
        let zz = Integers;
        let x = WittVec::from_coords(vec![BigInt::from(5), BigInt::from(-3), BigInt::from(7)]);
        let g = ghost(&zz, 3, &x);
        assert_eq!(from_ghost(&zz, 3, &g).unwrap(), x);
    }

    #[test]
    fn teichmuller_sum_in_w2_f2() {
        let w = WittRing::new(Fq::prime_field(2).unwrap(), 2);
        let k = w.base().clone();
        let one = w.teichmuller(&k.one());
        let two = w.add(&one, &one);
        assert_eq!(two.coords(), &[k.zero(), k.one()]);
        assert_eq!(two, w.verschiebung(&w.frobenius(&one).unwrap()));
    }

    #[test]
    fn negation_p2() {
        let w = WittRing::new(Fq::prime_field(2).unwrap(), 3);
        let k = w.base().clone();
        let one = w.one();
        let minus_one = w.neg(&one);
        // -1 = 7 mod 8 = (1, 1, 1)
        assert_eq!(minus_one.coords(), &[k.one(), k.one(), k.one()]);
        assert!(w.is_zero(&w.add(&one, &minus_one)));
    }

    #[test]
    fn teichmuller_multiplicative_f4() {
        let k = Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap();
        let w = WittRing::new(k.clone(), 2);
        let a = k.elem(&[0, 1]).unwrap();
        let sq = w.mul(&w.teichmuller(&a), &w.teichmuller(&a));
        assert_eq!(sq, w.teichmuller(&k.mul(&a, &a)));
    }

    #[test]
    fn verschiebung_shifts() {
        let k = Fq::prime_field(3).unwrap();
        let w = WittRing::new(k.clone(), 2);
        let v = w.verschiebung(&w.one());
        assert_eq!(v.coords(), &[k.zero(), k.one()]);
    }

    #[test]
    fn frobenius_rejected_outside_char_p() {
        let w = WittRing::new(Zmod::new(3, 2), 2);
        assert_eq!(w.frobenius(&w.one()), Err(Error::WrongCharacteristic));
    }

    #[test]
    fn wp_of_inverse_t() {
        // wp([T^-1]) over F_2((T)), N = 2 = (T^-2 + T^-1, T^-2 + T^-3)
        let k = Fq::prime_field(2).unwrap();
        let lr = LaurentRing::new(k.clone());
        let w = WittRing::new(lr.clone(), 2);
        let x = w.teichmuller(&lr.monomial(k.one(), -1));
        let y = w.wp(&x).unwrap();
        let expect0 = lr.exact(-2, vec![k.one(), k.one()]);
        let expect1 = lr.exact(-3, vec![k.one(), k.one()]);
        assert_eq!(y.coords(), &[expect0, expect1]);
    }
}
