//! Finite fields `F_q = F_p[t]/(h)` in the power basis.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{is_prime, Invertible, Ring};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 6;

/// Largest exhaustive factor search performed when validating a modulus.
const MAX_FACTOR_SEARCH: u64 = 1_000_000;

/// `p`, `f` and a monic irreducible modulus of degree `f` over `F_p`.
///
/// The modulus is stored little-endian with the leading `1` included, so it
/// has `f + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub f: usize,
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// The prime field `F_p`, with modulus `t`.
    pub fn prime(p: u64) -> Self {
        FieldSpec {
            p,
            f: 1,
            modulus: vec![0, 1],
        }
    }

    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        let f = modulus.len().saturating_sub(1);
        FieldSpec { p, f, modulus }
    }

    /// Checks primality, shape and irreducibility of the modulus.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFieldSpec(m));
        if !is_prime(self.p) || self.p > 251 {
            return bad(format!("p = {} is not a prime below 256", self.p));
        }
        if self.f == 0 || self.f > MAX_DEGREE {
            return bad(format!("extension degree {} outside 1..={MAX_DEGREE}", self.f));
        }
        if self.modulus.len() != self.f + 1 {
            return bad(format!(
                "modulus has {} coefficients, expected f + 1 = {}",
                self.modulus.len(),
                self.f + 1
            ));
        }
        if let Some(c) = self.modulus.iter().find(|&&c| c >= self.p) {
            return bad(format!("modulus coefficient {c} is not reduced mod {}", self.p));
        }
        if self.modulus[self.f] != 1 {
            return bad("modulus is not monic".into());
        }
        if !is_irreducible(self.p, &self.modulus)? {
            return bad("modulus is reducible over F_p".into());
        }
        Ok(())
    }

    /// Smallest monic irreducible polynomial of degree `f`, in the index
    /// order used by [`Fq::element_at`].
    pub fn conway_like(p: u64, f: usize) -> Result<Self> {
        if f == 1 {
            return Ok(Self::prime(p));
        }
        let count = p.pow(f as u32);
        for idx in 0..count {
            let mut m = digits(idx, p, f);
            m.push(1);
            if is_irreducible(p, &m)? {
                return Ok(FieldSpec::new(p, m));
            }
        }
        Err(Error::InvalidFieldSpec(format!("no irreducible of degree {f}")))
    }
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// Exhaustive search for a monic factor of degree `1..=deg/2`.
fn is_irreducible(p: u64, modulus: &[u64]) -> Result<bool> {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        if count > MAX_FACTOR_SEARCH {
            return Err(Error::InvalidFieldSpec(format!(
                "irreducibility search over {count} candidates is out of scope"
            )));
        }
        for idx in 0..count {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem_mod_p(modulus, &g, p).iter().all(|&c| c == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Remainder of `a` by the monic `b` over `F_p`.
fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &bc) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p * p - lead * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// An element of `F_q`, as coordinates in the power basis `1, t, ..., t^(f-1)`.
///
/// Unused slots beyond `f` are always zero, so derived equality and ordering
/// are meaningful within one field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElem(pub(crate) [u8; MAX_DEGREE]);

impl FFElem {
    pub fn coeffs(&self, f: usize) -> Vec<u64> {
        self.0[..f].iter().map(|&c| c as u64).collect()
    }

    pub fn constant_term(&self) -> u64 {
        self.0[0] as u64
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "{:?}", &self.0[..=last])
    }
}

struct FqInner {
    spec: FieldSpec,
    p: u64,
    f: usize,
    q: u64,
    modulus: [u64; MAX_DEGREE + 1],
    /// Trace of each basis element `t^i`.
    basis_trace: [u64; MAX_DEGREE],
}

/// Arithmetic context for `F_q`.
#[derive(Clone)]
pub struct Fq(Arc<FqInner>);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}{:?}", self.0.p, self.0.f, self.0.spec.modulus)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Fq {}

impl Fq {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.validate()?;
        let p = spec.p;
        let f = spec.f;
        let mut modulus = [0u64; MAX_DEGREE + 1];
        modulus[..=f].copy_from_slice(&spec.modulus);
        let q = p.pow(f as u32);
        let field = Fq(Arc::new(FqInner {
            spec,
            p,
            f,
            q,
            modulus,
            basis_trace: [0; MAX_DEGREE],
        }));
        let mut basis_trace = [0u64; MAX_DEGREE];
        for (i, slot) in basis_trace.iter_mut().enumerate().take(f) {
            let mut e = [0u8; MAX_DEGREE];
            e[i] = 1;
            *slot = field.trace_by_conjugates(&FFElem(e));
        }
        let mut inner = Arc::try_unwrap(field.0).ok().expect("sole owner");
        inner.basis_trace = basis_trace;
        Ok(Fq(Arc::new(inner)))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Fq::new(FieldSpec::prime(p))
    }

    /// `F_(p^f)` with the first irreducible modulus in index order.
    pub fn with_degree(p: u64, f: usize) -> Result<Self> {
        Fq::new(FieldSpec::conway_like(p, f)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn degree(&self) -> usize {
        self.0.f
    }
    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn elem(&self, coeffs: &[u64]) -> Result<FFElem> {
        if coeffs.len() != self.0.f {
            return Err(Error::InvalidInput(format!(
                "field element has {} coordinates, expected {}",
                coeffs.len(),
                self.0.f
            )));
        }
        let mut e = [0u8; MAX_DEGREE];
        for (slot, &c) in e.iter_mut().zip(coeffs) {
            if c >= self.0.p {
                return Err(Error::InvalidInput(format!(
                    "coordinate {c} is not reduced mod {}",
                    self.0.p
                )));
            }
            *slot = c as u8;
        }
        Ok(FFElem(e))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FFElem {
        let mut e = [0u8; MAX_DEGREE];
        e[0] = n.rem_euclid(self.0.p as i64) as u8;
        FFElem(e)
    }

    /// The class of `t` in `F_p[t]/(h)`.
    pub fn generator(&self) -> FFElem {
        if self.0.f == 1 {
            return self.from_int(-(self.0.modulus[0] as i64));
        }
        let mut e = [0u8; MAX_DEGREE];
        e[1] = 1;
        FFElem(e)
    }

    /// Element number `idx` in the fixed enumeration: coordinates are the
    /// base-`p` digits of `idx`, constant coordinate first.
    pub fn element_at(&self, idx: u64) -> FFElem {
        let mut e = [0u8; MAX_DEGREE];
        let mut idx = idx;
        for slot in e.iter_mut().take(self.0.f) {
            *slot = (idx % self.0.p) as u8;
            idx /= self.0.p;
        }
        FFElem(e)
    }

    pub fn index_of(&self, a: &FFElem) -> u64 {
        a.0[..self.0.f]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.0.p + c as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.0.q).map(move |i| self.element_at(i))
    }

    pub fn in_prime_field(&self, a: &FFElem) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    /// `a^(p^j)` for any integer `j`; negative `j` inverts the Frobenius.
    pub fn frobenius_pow(&self, a: &FFElem, j: i64) -> FFElem {
        let f = self.0.f as i64;
        let j = j.rem_euclid(f);
        let mut x = *a;
        for _ in 0..j {
            x = self.pow(&x, self.0.p);
        }
        x
    }

    pub fn inv_frobenius(&self, a: &FFElem) -> FFElem {
        self.frobenius_pow(a, -1)
    }

    /// `Tr_{F_q/F_p}(a) = sum of a^(p^j)` evaluated by summing conjugates.
    pub fn trace_by_conjugates(&self, a: &FFElem) -> u64 {
        let mut acc = FFElem::default();
        let mut x = *a;
        for _ in 0..self.0.f {
            acc = self.add(&acc, &x);
            x = self.pow(&x, self.0.p);
        }
        debug_assert!(self.in_prime_field(&acc), "trace left F_p");
        acc.0[0] as u64
    }

    /// Trace to `F_p`, computed linearly from the traces of the basis.
    pub fn trace(&self, a: &FFElem) -> u64 {
        let p = self.0.p;
        a.0[..self.0.f]
            .iter()
            .zip(&self.0.basis_trace)
            .fold(0, |acc, (&c, &t)| (acc + c as u64 * t) % p)
    }

    /// First element in the enumeration with nonzero trace.
    pub fn choose_alpha(&self) -> FFElem {
        self.elements()
            .find(|a| self.trace(a) != 0)
            .expect("the trace is surjective")
    }

    /// Solves `b^p - b = a` over `F_q`; `None` exactly when `Tr(a) != 0`.
    pub fn solve_artin_schreier(&self, a: &FFElem) -> Option<FFElem> {
        if self.trace(a) != 0 {
            return None;
        }
        let f = self.0.f;
        let p = self.0.p;
        // Columns: images of basis vectors under x -> x^p - x.
        let mut cols: Vec<FFElem> = Vec::with_capacity(f);
        for i in 0..f {
            let mut e = [0u8; MAX_DEGREE];
            e[i] = 1;
            let b = FFElem(e);
            cols.push(self.sub(&self.pow(&b, p), &b));
        }
        // Augmented matrix rows = coordinates.
        let mut m: Vec<Vec<u64>> = (0..f)
            .map(|r| {
                let mut row: Vec<u64> = cols.iter().map(|c| c.0[r] as u64).collect();
                row.push(a.0[r] as u64);
                row
            })
            .collect();
        let inv = |x: u64| -> u64 { mod_pow(x, p - 2, p) };
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..f {
            let Some(pr) = (row..f).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let s = inv(m[row][col]);
            for v in m[row].iter_mut() {
                *v = *v * s % p;
            }
            for r in 0..f {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..=f {
                        m[r][c] = (m[r][c] + p * p - factor * m[row][c] % p) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| r[f] != 0) {
            return None;
        }
        let mut sol = [0u8; MAX_DEGREE];
        for (r, &c) in pivots.iter().enumerate() {
            sol[c] = m[r][f] as u8;
        }
        let b = FFElem(sol);
        debug_assert_eq!(self.sub(&self.pow(&b, p), &b), *a);
        Some(b)
    }

    /// Number of distinct conjugates of `a` over `F_p`.
    pub fn orbit_size(&self, a: &FFElem) -> usize {
        let mut x = self.pow(a, self.0.p);
        let mut n = 1;
        while x != *a {
            x = self.pow(&x, self.0.p);
            n += 1;
        }
        n
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Ring for Fq {
    type Elem = FFElem;

    fn zero(&self) -> FFElem {
        FFElem::default()
    }
    fn one(&self) -> FFElem {
        self.from_int(1)
    }
    fn from_i64(&self, n: i64) -> FFElem {
        self.from_int(n)
    }
    fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let p = self.0.p as u16;
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..self.0.f {
            out[i] = ((a.0[i] as u16 + b.0[i] as u16) % p) as u8;
        }
        FFElem(out)
    }
    fn neg(&self, a: &FFElem) -> FFElem {
        let p = self.0.p as u16;
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..self.0.f {
            out[i] = ((p - a.0[i] as u16) % p) as u8;
        }
        FFElem(out)
    }
    fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let p = self.0.p as u16;
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..self.0.f {
            out[i] = ((a.0[i] as u16 + p - b.0[i] as u16) % p) as u8;
        }
        FFElem(out)
    }
    fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let f = self.0.f;
        let p = self.0.p;
        if f == 1 {
            let mut out = [0u8; MAX_DEGREE];
            out[0] = (a.0[0] as u64 * b.0[0] as u64 % p) as u8;
            return FFElem(out);
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..f {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] += a.0[i] as u64 * b.0[j] as u64;
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        let m = &self.0.modulus;
        for k in (f..2 * f - 1).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mc) in m.iter().enumerate().take(f) {
                prod[k - f + i] = (prod[k - f + i] + p * p - lead * mc % p) % p;
            }
        }
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..f {
            out[i] = prod[i] as u8;
        }
        FFElem(out)
    }
    fn is_zero(&self, a: &FFElem) -> bool {
        a.is_zero()
    }
}

impl Invertible for Fq {
    fn inverse(&self, a: &FFElem) -> Option<FFElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.0.q - 2))
        }
    }
}

impl Fq {
    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        self.inverse(a).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub(crate) fn modulus_coeffs(&self) -> &[u64] {
        &self.0.modulus[..=self.0.f]
    }

    pub fn check_same(&self, other: &Fq) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Fq {
        Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn f4_products() {
        let k = f4();
        let w = k.elem(&[0, 1]).unwrap();
        assert_eq!(k.mul(&w, &w).coeffs(2), vec![1, 1]);
        assert_eq!(k.trace_by_conjugates(&w), 1);
        assert_eq!(k.trace(&w), 1);
        assert_eq!(k.trace(&k.one()), 0);
    }

    #[test]
    fn alpha_choices() {
        assert_eq!(Fq::prime_field(2).unwrap().choose_alpha().coeffs(1), vec![1]);
        assert_eq!(Fq::prime_field(3).unwrap().choose_alpha().coeffs(1), vec![1]);
        assert_eq!(f4().choose_alpha().coeffs(2), vec![0, 1]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Fq::new(FieldSpec::new(2, vec![1, 0, 1])).is_err()); // (t+1)^2
        assert!(Fq::new(FieldSpec::new(4, vec![1, 1, 1])).is_err());
        assert!(Fq::new(FieldSpec::new(3, vec![1, 0, 2])).is_err()); // not monic
        assert!(Fq::new(FieldSpec { p: 3, f: 2, modulus: vec![1, 1] }).is_err());
        assert!(Fq::new(FieldSpec::new(3, vec![1, 0, 1])).is_ok()); // t^2 + 1
    }

    #[test]
    fn division_by_zero() {
        let k = f4();
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_order() {
        for (p, f) in [(2, 3), (3, 2), (5, 2), (7, 1), (2, 6)] {
            let k = Fq::with_degree(p, f).unwrap();
            for a in k.elements().take(200) {
                assert_eq!(k.frobenius_pow(&a, f as i64), a);
                assert_eq!(k.inv_frobenius(&k.pow(&a, p)), a);
                assert_eq!(k.trace(&a), k.trace_by_conjugates(&a));
            }
        }
    }

    #[test]
    fn artin_schreier_solutions() {
        let k = Fq::with_degree(3, 2).unwrap();
        for a in k.elements() {
            match k.solve_artin_schreier(&a) {
                Some(b) => assert_eq!(k.sub(&k.pow(&b, 3), &b), a),
                None => assert_ne!(k.trace(&a), 0),
            }
        }
    }

    #[test]
    fn enumeration_roundtrip() {
        let k = Fq::with_degree(3, 3).unwrap();
        for i in 0..k.order() {
            assert_eq!(k.index_of(&k.element_at(i)), i);
        }
    }
}
