//! `Z_q / p^N = W_N(F_q)` in Witt coordinates, and `Z_p / p^N`.

use std::fmt;

use num_bigint::BigInt;

use super::field::{FFElem, Fq};
use super::galois::{GaloisRing, GrElem};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::witt::{WittRing, WittVec};

/// An element of `W_N(F_q)`, stored by its Witt coordinates.
pub type UnramElem = WittVec<FFElem>;

/// An element of `Z_p / p^N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZpApprox {
    p: u64,
    n: u32,
    value: u64,
}

impl fmt::Debug for ZpApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.n)
    }
}

impl ZpApprox {
    pub fn new(p: u64, n: u32, value: i64) -> Self {
        let m = p.pow(n);
        ZpApprox {
            p,
            n,
            value: value.rem_euclid(m as i64) as u64,
        }
    }

    pub fn zero(p: u64, n: u32) -> Self {
        ZpApprox { p, n, value: 0 }
    }

    /// From base-`p` digits, least significant first.
    pub fn from_digits(p: u64, digits: &[u64]) -> Result<Self> {
        if digits.iter().any(|&d| d >= p) {
            return Err(Error::InvalidInput(format!("digit out of range for p = {p}")));
        }
        let value = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d);
        Ok(ZpApprox {
            p,
            n: digits.len() as u32,
            value,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.n
    }
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn digits(&self) -> Vec<u64> {
        let mut v = self.value;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// `p`-adic valuation, `None` when zero mod `p^N`.
    pub fn valuation(&self) -> Option<u32> {
        if self.value == 0 {
            return None;
        }
        let mut v = self.value;
        let mut k = 0;
        while v % self.p == 0 {
            v /= self.p;
            k += 1;
        }
        Some(k)
    }

    /// Reduction to `Z/p^n` for `n <= N`.
    pub fn reduce(&self, n: u32) -> ZpApprox {
        assert!(n <= self.n, "cannot raise precision");
        ZpApprox {
            p: self.p,
            n,
            value: self.value % self.p.pow(n),
        }
    }

    pub fn add(&self, other: &ZpApprox) -> ZpApprox {
        debug_assert_eq!((self.p, self.n), (other.p, other.n));
        ZpApprox {
            value: (self.value + other.value) % self.modulus(),
            ..*self
        }
    }

    pub fn mul(&self, other: &ZpApprox) -> ZpApprox {
        debug_assert_eq!((self.p, self.n), (other.p, other.n));
        ZpApprox {
            value: self.value * other.value % self.modulus(),
            ..*self
        }
    }

    pub fn neg(&self) -> ZpApprox {
        let m = self.modulus();
        ZpApprox {
            value: (m - self.value) % m,
            ..*self
        }
    }
}

/// Arithmetic context for `W_N(F_q)`, with conversions to the Galois ring
/// model `GR(p^N, f)`.
#[derive(Clone, Debug)]
pub struct UnramRing {
    field: Fq,
    n: usize,
    witt: WittRing<Fq>,
    gr: GaloisRing,
}

impl UnramRing {
    pub fn new(field: &Fq, n: usize) -> Self {
        let witt = WittRing::new(field.clone(), n);
        let gr = GaloisRing::new(field, n as u32);
        UnramRing {
            field: field.clone(),
            n,
            witt,
            gr,
        }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }
    pub fn precision(&self) -> usize {
        self.n
    }
    pub fn witt(&self) -> &WittRing<Fq> {
        &self.witt
    }
    pub fn galois_ring(&self) -> &GaloisRing {
        &self.gr
    }

    pub fn elem(&self, digits: Vec<FFElem>) -> Result<UnramElem> {
        if digits.len() != self.n {
            return Err(Error::PrecisionMismatch(digits.len(), self.n));
        }
        Ok(WittVec::from_coords(digits))
    }

    pub fn check(&self, x: &UnramElem) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::PrecisionMismatch(x.len(), self.n));
        }
        Ok(())
    }

    pub fn teichmuller(&self, a: &FFElem) -> UnramElem {
        self.witt.teichmuller(a)
    }

    pub fn from_integer(&self, m: &BigInt) -> UnramElem {
        self.witt.from_integer(m)
    }

    pub fn from_zp(&self, c: &ZpApprox) -> UnramElem {
        self.from_integer(&BigInt::from(c.value()))
    }

    /// Least `j` with a nonzero digit; `None` stands for "at least N".
    pub fn valuation(&self, x: &UnramElem) -> Option<usize> {
        self.witt.v_valuation(x)
    }

    pub fn frobenius(&self, x: &UnramElem) -> UnramElem {
        x.map(|d| self.field.frobenius_pow(d, 1))
    }

    pub fn frobenius_pow(&self, x: &UnramElem, j: i64) -> UnramElem {
        x.map(|d| self.field.frobenius_pow(d, j))
    }

    /// `Tr_{Z_q/Z_p}(x) = sum_{j < f} F^j(x)`.
    pub fn trace(&self, x: &UnramElem) -> ZpApprox {
        let f = self.field.degree();
        let conj: Vec<_> = (0..f as i64).map(|j| self.frobenius_pow(x, j)).collect();
        let t = self.witt.sum(conj.iter());
        assert!(
            t.coords().iter().all(|d| self.field.in_prime_field(d)),
            "Witt trace left the prime field"
        );
        self.prime_field_value(&t)
    }

    /// The integer mod `p^N` represented by a vector with `F_p` coordinates.
    pub fn prime_field_value(&self, x: &UnramElem) -> ZpApprox {
        let p = self.field.p();
        let zm = crate::ring::Zmod::new(p, self.n as u32);
        let lifts: Vec<u64> = x.coords().iter().map(|d| d.constant_term()).collect();
        let g = crate::witt::ghost(&zm, p, &WittVec::from_coords(lifts));
        ZpApprox::new(p, self.n as u32, *g.last().unwrap() as i64)
    }

    /// Image in `GR(p^N, f)`: `sum_j p^j [r_j^(p^-j)]`.
    pub fn to_gr(&self, x: &UnramElem) -> GrElem {
        let gr = &self.gr;
        let mut acc = gr.zero();
        let mut pj = gr.one();
        for (j, r) in x.coords().iter().enumerate() {
            if !r.is_zero() {
                let d = self.field.frobenius_pow(r, -(j as i64));
                acc = gr.add(&acc, &gr.mul(&pj, &gr.teichmuller(&d)));
            }
            pj = gr.scale(self.field.p() as i64, &pj);
        }
        acc
    }

    /// Inverse of [`UnramRing::to_gr`].
    pub fn from_gr(&self, x: &GrElem) -> UnramElem {
        let gr = &self.gr;
        let p = self.field.p() as i64;
        let mut rest = *x;
        let mut pj = gr.one();
        let mut coords = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut shifted = rest;
            for _ in 0..j {
                shifted = gr.div_p_exact(&shifted).expect("digit peeling stays divisible");
            }
            let d = gr.residue(&shifted);
            coords.push(self.field.frobenius_pow(&d, j as i64));
            rest = gr.sub(&rest, &gr.mul(&pj, &gr.teichmuller(&d)));
            pj = gr.scale(p, &pj);
        }
        WittVec::from_coords(coords)
    }
}

impl Ring for UnramRing {
    type Elem = UnramElem;

    fn zero(&self) -> UnramElem {
        self.witt.zero()
    }
    fn one(&self) -> UnramElem {
        self.witt.one()
    }
    fn from_i64(&self, n: i64) -> UnramElem {
        self.witt.from_integer(&BigInt::from(n))
    }
    fn add(&self, a: &UnramElem, b: &UnramElem) -> UnramElem {
        self.witt.add(a, b)
    }
    fn neg(&self, a: &UnramElem) -> UnramElem {
        self.witt.neg(a)
    }
    fn sub(&self, a: &UnramElem, b: &UnramElem) -> UnramElem {
        self.witt.sub(a, b)
    }
    fn mul(&self, a: &UnramElem, b: &UnramElem) -> UnramElem {
        self.witt.mul(a, b)
    }
    fn is_zero(&self, a: &UnramElem) -> bool {
        self.witt.is_zero(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn f4() -> Fq {
        Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn trace_of_teichmuller_w() {
        let k = f4();
        let r = UnramRing::new(&k, 2);
        let w = k.elem(&[0, 1]).unwrap();
        let t = r.trace(&r.teichmuller(&w));
        assert_eq!(t.value(), 3);
        assert_eq!(t.digits(), vec![1, 1]);
    }

    #[test]
    fn integers_embed() {
        let k = Fq::prime_field(3).unwrap();
        let r = UnramRing::new(&k, 3);
        for m in 0..27i64 {
            for m2 in 0..27i64 {
                let s = r.add(&r.from_i64(m), &r.from_i64(m2));
                assert_eq!(s, r.from_i64(m + m2));
            }
            assert_eq!(r.prime_field_value(&r.from_i64(m)).value(), m as u64);
        }
    }

    #[test]
    fn gr_roundtrip() {
        let k = Fq::with_degree(3, 2).unwrap();
        let r = UnramRing::new(&k, 3);
        for a in k.elements() {
            for b in k.elements().step_by(3) {
                let x = r.elem(vec![a, b, k.add(&a, &b)]).unwrap();
                assert_eq!(r.from_gr(&r.to_gr(&x)), x);
                let y = r.elem(vec![b, a, a]).unwrap();
                let prod = r.mul(&x, &y);
                let gr = r.galois_ring();
                assert_eq!(r.to_gr(&prod), gr.mul(&r.to_gr(&x), &r.to_gr(&y)));
            }
        }
    }

    #[test]
    fn valuation_of_p_multiple() {
        let k = f4();
        let r = UnramRing::new(&k, 3);
        let x = r.teichmuller(&k.elem(&[1, 1]).unwrap());
        let px = r.mul(&r.from_i64(2), &x);
        assert_eq!(r.valuation(&x), Some(0));
        assert_eq!(r.valuation(&px), Some(1));
        assert_eq!(r.valuation(&r.zero()), None);
    }

    #[test]
    fn zp_digits() {
        let z = ZpApprox::new(3, 3, -1);
        assert_eq!(z.value(), 26);
        assert_eq!(z.digits(), vec![2, 2, 2]);
        assert_eq!(ZpApprox::from_digits(3, &[2, 2, 2]).unwrap(), z);
        assert_eq!(ZpApprox::new(2, 3, 4).valuation(), Some(2));
    }
}
