//! Galois rings `GR(p^n, f) = (Z/p^n)[t]/(h)`, the polynomial model of
//! `Z_q / p^n` used as the lift of `F_q` in Witt arithmetic.

use std::fmt;
use std::sync::Arc;

use super::field::{FFElem, Fq, MAX_DEGREE};
use crate::ring::{Invertible, Ring, WittBase};

/// An element of a Galois ring: power-basis coordinates modulo `p^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GrElem(pub(crate) [u64; MAX_DEGREE]);

impl GrElem {
    pub fn coeffs(&self, f: usize) -> &[u64] {
        &self.0[..f]
    }
}

impl fmt::Debug for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "{:?}", &self.0[..=last])
    }
}

struct GrInner {
    field: Fq,
    p: u64,
    n: u32,
    modulus: u64,
    f: usize,
    h: [u64; MAX_DEGREE + 1],
    basis_trace: [u64; MAX_DEGREE],
}

/// Arithmetic context for `GR(p^n, f)`, built over a residue field `F_q`.
#[derive(Clone)]
pub struct GaloisRing(Arc<GrInner>);

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.0.p, self.0.n, self.0.f)
    }
}

impl GaloisRing {
    pub fn new(field: &Fq, n: u32) -> Self {
        let p = field.p();
        let f = field.degree();
        let modulus = p.checked_pow(n).expect("p^n overflow");
        assert!(modulus < (1 << 31), "p^n must stay below 2^31");
        let mut h = [0u64; MAX_DEGREE + 1];
        h[..=f].copy_from_slice(field.modulus_coeffs());
        let ring = GaloisRing(Arc::new(GrInner {
            field: field.clone(),
            p,
            n,
            modulus,
            f,
            h,
            basis_trace: [0; MAX_DEGREE],
        }));
        // Tr(t^i) = trace of multiplication by t^i on the power basis.
        let mut basis_trace = [0u64; MAX_DEGREE];
        for (i, slot) in basis_trace.iter_mut().enumerate().take(f) {
            let ti = ring.basis(i);
            let mut acc = 0;
            for k in 0..f {
                let prod = ring.mul(&ti, &ring.basis(k));
                acc = (acc + prod.0[k]) % modulus;
            }
            *slot = acc;
        }
        let mut inner = Arc::try_unwrap(ring.0).ok().expect("sole owner");
        inner.basis_trace = basis_trace;
        GaloisRing(Arc::new(inner))
    }

    pub fn residue_field(&self) -> &Fq {
        &self.0.field
    }
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn precision(&self) -> u32 {
        self.0.n
    }
    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }
    pub fn degree(&self) -> usize {
        self.0.f
    }

    /// `t^i` for `i < f`.
    fn basis(&self, i: usize) -> GrElem {
        let mut e = [0u64; MAX_DEGREE];
        e[i] = 1;
        GrElem(e)
    }

    /// Coordinatewise lift of a residue-field element to `[0, p)`.
    pub fn lift_digits(&self, a: &FFElem) -> GrElem {
        let mut e = [0u64; MAX_DEGREE];
        for (slot, &c) in e.iter_mut().zip(a.0.iter()).take(self.0.f) {
            *slot = c as u64;
        }
        GrElem(e)
    }

    /// Reduction modulo `p`.
    pub fn residue(&self, a: &GrElem) -> FFElem {
        let mut e = [0u8; MAX_DEGREE];
        for (slot, &c) in e.iter_mut().zip(a.0.iter()).take(self.0.f) {
            *slot = (c % self.0.p) as u8;
        }
        FFElem(e)
    }

    /// The Teichmüller representative `[a]`, the unique `(q-1)`-th root of
    /// unity (or zero) reducing to `a`.
    pub fn teichmuller(&self, a: &FFElem) -> GrElem {
        let lifted = self.lift_digits(a);
        let q = self.0.field.order();
        let mut x = lifted;
        for _ in 1..self.0.n {
            x = self.pow(&x, q);
        }
        x
    }

    /// `p`-adic valuation, `None` for zero.
    pub fn valuation(&self, a: &GrElem) -> Option<u32> {
        let mut v = None;
        for &c in a.0.iter().take(self.0.f) {
            if c == 0 {
                continue;
            }
            let mut k = 0;
            let mut c = c;
            while c % self.0.p == 0 {
                c /= self.0.p;
                k += 1;
            }
            v = Some(v.map_or(k, |old: u32| old.min(k)));
        }
        v
    }

    /// `Tr_{GR/Z/p^n}` as the trace of the multiplication map.
    pub fn trace(&self, a: &GrElem) -> u64 {
        let m = self.0.modulus;
        a.0.iter()
            .zip(&self.0.basis_trace)
            .take(self.0.f)
            .fold(0, |acc, (&c, &t)| (acc + c * t) % m)
    }

    /// Embeds an integer residue in `Z/p^n` as a constant.
    pub fn from_residue(&self, v: u64) -> GrElem {
        let mut e = [0u64; MAX_DEGREE];
        e[0] = v % self.0.modulus;
        GrElem(e)
    }

    /// Constant coordinate, meaningful when the element lies in `Z/p^n`.
    pub fn as_integer(&self, a: &GrElem) -> Option<u64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    pub fn div_p_exact(&self, a: &GrElem) -> Option<GrElem> {
        let p = self.0.p;
        if a.0.iter().any(|&c| c % p != 0) {
            return None;
        }
        let mut e = a.0;
        for c in e.iter_mut() {
            *c /= p;
        }
        Some(GrElem(e))
    }
}

impl Ring for GaloisRing {
    type Elem = GrElem;

    fn zero(&self) -> GrElem {
        GrElem::default()
    }
    fn one(&self) -> GrElem {
        self.from_residue(1)
    }
    fn from_i64(&self, n: i64) -> GrElem {
        self.from_residue(n.rem_euclid(self.0.modulus as i64) as u64)
    }
    fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let m = self.0.modulus;
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.0.f {
            out[i] = (a.0[i] + b.0[i]) % m;
        }
        GrElem(out)
    }
    fn neg(&self, a: &GrElem) -> GrElem {
        let m = self.0.modulus;
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.0.f {
            out[i] = (m - a.0[i]) % m;
        }
        GrElem(out)
    }
    fn sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let m = self.0.modulus;
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..self.0.f {
            out[i] = (a.0[i] + m - b.0[i]) % m;
        }
        GrElem(out)
    }
    fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let f = self.0.f;
        let m = self.0.modulus;
        if f == 1 {
            let mut out = [0u64; MAX_DEGREE];
            out[0] = a.0[0] * b.0[0] % m;
            return GrElem(out);
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..f {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = (prod[i + j] + a.0[i] * b.0[j]) % m;
            }
        }
        let h = &self.0.h;
        for k in (f..2 * f - 1).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &hc) in h.iter().enumerate().take(f) {
                prod[k - f + i] = (prod[k - f + i] + m - lead * hc % m) % m;
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        out[..f].copy_from_slice(&prod[..f]);
        GrElem(out)
    }
    fn is_zero(&self, a: &GrElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
}

impl Invertible for GaloisRing {
    fn inverse(&self, a: &GrElem) -> Option<GrElem> {
        if self.residue(a).is_zero() {
            return None;
        }
        // |GR^*| = (q - 1) q^(n-1)
        let q = self.0.field.order();
        let order = (q - 1) * q.pow(self.0.n - 1);
        Some(self.pow(a, order - 1))
    }
}

impl WittBase for Fq {
    type Lift = GaloisRing;

    fn prime(&self) -> u64 {
        self.p()
    }
    fn has_char_p(&self) -> bool {
        true
    }
    fn lift_ring(&self, len: usize) -> GaloisRing {
        GaloisRing::new(self, len.max(1) as u32)
    }
    fn lift(&self, lift: &GaloisRing, a: &FFElem) -> GrElem {
        lift.lift_digits(a)
    }
    fn reduce(&self, lift: &GaloisRing, a: &GrElem) -> FFElem {
        lift.residue(a)
    }
    fn div_p(&self, lift: &GaloisRing, a: &GrElem) -> Option<GrElem> {
        lift.div_p_exact(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn teichmuller_is_root_of_unity() {
        let k = Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap();
        let gr = GaloisRing::new(&k, 3);
        for a in k.elements().skip(1) {
            let t = gr.teichmuller(&a);
            assert_eq!(gr.pow(&t, 3), gr.one());
            assert_eq!(gr.residue(&t), a);
        }
    }

    #[test]
    fn trace_of_teichmuller_w() {
        // [w] + [w^2] = -1 in Z_4 since w, w^2 are the primitive cube roots.
        let k = Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap();
        let gr = GaloisRing::new(&k, 2);
        let w = k.elem(&[0, 1]).unwrap();
        assert_eq!(gr.trace(&gr.teichmuller(&w)), 3);
        assert_eq!(gr.trace(&gr.one()), 2);
    }

    #[test]
    fn inverses() {
        let k = Fq::with_degree(3, 2).unwrap();
        let gr = GaloisRing::new(&k, 3);
        let x = gr.add(&gr.teichmuller(&k.elem(&[1, 2]).unwrap()), &gr.from_residue(3));
        let y = gr.inverse(&x).unwrap();
        assert_eq!(gr.mul(&x, &y), gr.one());
        assert!(gr.inverse(&gr.from_residue(3)).is_none());
    }
}
