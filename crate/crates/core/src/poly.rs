//! Univariate polynomials and rational functions.
//!
//! `RatFuncRing` is the field `k(X)`; `RatFuncLift` is its lift to
//! fractions `A/B` over `GR(p^n, f)[X]` with `B` nonzero modulo `p`, which
//! is where Witt arithmetic over `k(X)` runs.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{FFElem, Fq, GaloisRing, GrElem};
use crate::error::{Error, Result};
use crate::ring::{Invertible, Ring, WittBase};
use crate::series::{LaurentRing, LaurentSeries};

/// Polynomials over `R`, coefficients stored constant term first with no
/// trailing zeros.
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    coeff: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(coeff: R) -> Self {
        PolyRing { coeff }
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeff
    }

    pub fn normalize(&self, mut a: Vec<R::Elem>) -> Vec<R::Elem> {
        while a.last().is_some_and(|c| self.coeff.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn degree(&self, a: &[R::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.normalize(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, e: usize) -> Vec<R::Elem> {
        let mut v = vec![self.coeff.zero(); e + 1];
        v[e] = c;
        self.normalize(v)
    }

    pub fn eval(&self, a: &[R::Elem], x: &R::Elem) -> R::Elem {
        a.iter()
            .rev()
            .fold(self.coeff.zero(), |acc, c| self.coeff.add(&self.coeff.mul(&acc, x), c))
    }

    pub fn scale(&self, c: &R::Elem, a: &[R::Elem]) -> Vec<R::Elem> {
        self.normalize(a.iter().map(|x| self.coeff.mul(c, x)).collect())
    }

    /// `a(X + x)`.
    pub fn taylor_shift(&self, a: &[R::Elem], x: &R::Elem) -> Vec<R::Elem> {
        let shift = self.normalize(vec![x.clone(), self.coeff.one()]);
        a.iter()
            .rev()
            .fold(Vec::new(), |acc, c| self.add(&self.mul(&acc, &shift), &self.constant(c.clone())))
    }

    /// `X^deg a(1/X)` for the given `deg >= degree(a)`.
    pub fn reversed(&self, a: &[R::Elem], deg: usize) -> Vec<R::Elem> {
        let mut v = vec![self.coeff.zero(); deg + 1];
        for (i, c) in a.iter().enumerate() {
            v[deg - i] = c.clone();
        }
        self.normalize(v)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.coeff.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.coeff.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.coeff.add(o, s);
        }
        self.normalize(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.coeff.neg(c)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.coeff.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.coeff.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.coeff.add(&out[i + j], &self.coeff.mul(x, y));
            }
        }
        self.normalize(out)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn from_bigint(&self, n: &num_bigint::BigInt) -> Self::Elem {
        self.constant(self.coeff.from_bigint(n))
    }
}

impl<R: Invertible> PolyRing<R> {
    /// Division with remainder; the leading coefficient of `b` must be a unit.
    pub fn divrem(&self, a: &[R::Elem], b: &[R::Elem]) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
        let db = self.degree(b).ok_or(Error::DivisionByZero)?;
        let lead_inv = self.coeff.inverse(&b[db]).ok_or(Error::NotAUnit)?;
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![self.coeff.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = self.coeff.mul(&rem[k], &lead_inv);
            if self.coeff.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                let slot = k - db + i;
                rem[slot] = self.coeff.sub(&rem[slot], &self.coeff.mul(&c, bi));
            }
            quot[k - db] = c;
        }
        Ok((self.normalize(quot), self.normalize(rem)))
    }
}

impl PolyRing<Fq> {
    pub fn monic(&self, a: &[FFElem]) -> Vec<FFElem> {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.coeff.inv(l).expect("nonzero leading coefficient");
                self.scale(&inv, a)
            }
        }
    }

    pub fn gcd(&self, a: &[FFElem], b: &[FFElem]) -> Vec<FFElem> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let (_, r) = self.divrem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Roots in `k` with multiplicities, found by exhaustive search.
    pub fn roots(&self, a: &[FFElem]) -> Vec<(FFElem, usize)> {
        let k = &self.coeff;
        let mut out = Vec::new();
        for x in k.elements() {
            let lin = vec![k.neg(&x), k.one()];
            let mut cur = a.to_vec();
            let mut mult = 0;
            while !cur.is_empty() {
                let (q, r) = self.divrem(&cur, &lin).unwrap();
                if !r.is_empty() {
                    break;
                }
                cur = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((x, mult));
            }
        }
        out
    }
}

/// A place of `k(X)` of degree one.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(FFElem),
    Infinity,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(x) => write!(f, "X={x:?}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places first (by coefficient vector), then infinity.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

/// `num / den` with `den` monic and coprime to `num` (over a field), or an
/// unnormalised fraction with `den` nonzero mod `p` (over a Galois ring).
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<E> {
    num: Vec<E>,
    den: Vec<E>,
}

impl<E: Clone> RatFunc<E> {
    pub fn num(&self) -> &[E] {
        &self.num
    }
    pub fn den(&self) -> &[E] {
        &self.den
    }
}

/// The rational function field `k(X)`.
#[derive(Clone, Debug)]
pub struct RatFuncRing {
    poly: PolyRing<Fq>,
}

impl RatFuncRing {
    pub fn new(k: &Fq) -> Self {
        RatFuncRing {
            poly: PolyRing::new(k.clone()),
        }
    }

    pub fn field(&self) -> &Fq {
        &self.poly.coeff
    }

    pub fn poly_ring(&self) -> &PolyRing<Fq> {
        &self.poly
    }

    pub fn frac(&self, num: Vec<FFElem>, den: Vec<FFElem>) -> Result<RatFunc<FFElem>> {
        let num = self.poly.normalize(num);
        let den = self.poly.normalize(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(self.zero());
        }
        let g = self.poly.gcd(&num, &den);
        let (num, _) = self.poly.divrem(&num, &g)?;
        let (den, _) = self.poly.divrem(&den, &g)?;
        let lead = *den.last().unwrap();
        let inv = self.field().inv(&lead)?;
        Ok(RatFunc {
            num: self.poly.scale(&inv, &num),
            den: self.poly.scale(&inv, &den),
        })
    }

    pub fn from_poly(&self, num: Vec<FFElem>) -> RatFunc<FFElem> {
        RatFunc {
            num: self.poly.normalize(num),
            den: self.poly.one(),
        }
    }

    pub fn constant(&self, c: FFElem) -> RatFunc<FFElem> {
        self.from_poly(vec![c])
    }

    /// The generator `X`.
    pub fn x(&self) -> RatFunc<FFElem> {
        let k = self.field();
        self.from_poly(vec![k.zero(), k.one()])
    }

    /// `1 / pi^i` for the uniformizer `pi = X - x` or `pi = 1/X`.
    pub fn inv_uniformizer_pow(&self, place: &Place, i: u64) -> RatFunc<FFElem> {
        let k = self.field();
        match place {
            Place::Infinity => self.from_poly(self.poly.monomial(k.one(), i as usize)),
            Place::Finite(x) => {
                let lin = vec![k.neg(x), k.one()];
                RatFunc {
                    num: self.poly.one(),
                    den: self.poly.pow(&lin, i),
                }
            }
        }
    }

    pub fn inv(&self, a: &RatFunc<FFElem>) -> Result<RatFunc<FFElem>> {
        if a.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        self.frac(a.den.clone(), a.num.clone())
    }

    /// Value at `z`, or `None` at a pole.
    pub fn eval(&self, a: &RatFunc<FFElem>, z: &FFElem) -> Option<FFElem> {
        let d = self.poly.eval(&a.den, z);
        if d.is_zero() {
            return None;
        }
        let n = self.poly.eval(&a.num, z);
        Some(self.field().div(&n, &d).unwrap())
    }

    /// Finite poles with their orders; fails unless the denominator splits
    /// into linear factors over `k`.
    pub fn finite_poles(&self, a: &RatFunc<FFElem>) -> Result<Vec<(FFElem, usize)>> {
        let roots = self.poly.roots(&a.den);
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        if Some(total) != self.poly.degree(&a.den) {
            return Err(Error::UnsupportedDenominator);
        }
        Ok(roots)
    }

    /// Pole order at infinity (0 when regular there).
    pub fn pole_order_at_infinity(&self, a: &RatFunc<FFElem>) -> usize {
        let dn = self.poly.degree(&a.num).unwrap_or(0);
        let dd = self.poly.degree(&a.den).unwrap_or(0);
        dn.saturating_sub(dd)
    }

    /// Expansion in the completion at `place`, in the uniformizer
    /// `X - x` or `1/X`, known below `T^known_to`.
    pub fn expand_at(&self, a: &RatFunc<FFElem>, place: &Place, known_to: i64) -> Result<LaurentSeries<FFElem>> {
        let k = self.field();
        let (num, den) = match place {
            Place::Finite(x) => (self.poly.taylor_shift(&a.num, x), self.poly.taylor_shift(&a.den, x)),
            Place::Infinity => {
                let deg = a.num.len().max(a.den.len()).saturating_sub(1);
                (self.poly.reversed(&a.num, deg), self.poly.reversed(&a.den, deg))
            }
        };
        if num.is_empty() {
            let lr = LaurentRing::new(k.clone());
            return Ok(lr.big_o(known_to));
        }
        let vd = den.iter().position(|c| !c.is_zero()).unwrap() as i64;
        let vn = num.iter().position(|c| !c.is_zero()).unwrap() as i64;
        let rel = (known_to - (vn - vd)).max(1);
        let lr = LaurentRing::with_rel_prec(k.clone(), rel);
        let n = lr.exact(0, num);
        let d = lr.exact(0, den);
        let q = lr.div(&n, &d)?;
        Ok(lr.truncate(&q, known_to))
    }

    /// Splits `a` as `constant + sum over places of principal parts`:
    /// returns the constant and, per place, `(e, a_e)` with
    /// `a = const + sum a_e pi^-e`.
    pub fn principal_parts(&self, a: &RatFunc<FFElem>) -> Result<(FFElem, Vec<(Place, Vec<(u64, FFElem)>)>)> {
        let k = self.field();
        let (q, _) = self.poly.divrem(&a.num, &a.den)?;
        let constant = q.first().copied().unwrap_or(k.zero());
        let mut parts = Vec::new();
        for (x, mult) in self.finite_poles(a)? {
            let place = Place::Finite(x);
            let s = self.expand_at(a, &place, 0)?;
            let lr = LaurentRing::new(k.clone());
            let terms: Vec<(u64, FFElem)> = (1..=mult as i64)
                .filter_map(|e| {
                    let c = lr.coeff(&s, -e).unwrap();
                    (!c.is_zero()).then_some((e as u64, c))
                })
                .collect();
            if !terms.is_empty() {
                parts.push((place, terms));
            }
        }
        let inf: Vec<(u64, FFElem)> = q
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, *c))
            .collect();
        if !inf.is_empty() {
            parts.push((Place::Infinity, inf));
        }
        Ok((constant, parts))
    }
}

impl Ring for RatFuncRing {
    type Elem = RatFunc<FFElem>;

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: Vec::new(),
            den: self.poly.one(),
        }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.field().one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.field().from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return self
                .frac(self.poly.add(&a.num, &b.num), a.den.clone())
                .expect("nonzero denominator");
        }
        let num = self.poly.add(&self.poly.mul(&a.num, &b.den), &self.poly.mul(&b.num, &a.den));
        self.frac(num, self.poly.mul(&a.den, &b.den))
            .expect("nonzero denominator")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.poly.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        self.frac(self.poly.mul(&a.num, &b.num), self.poly.mul(&a.den, &b.den))
            .expect("nonzero denominator")
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
}

impl Invertible for RatFuncRing {
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inv(a).ok()
    }
}

/// Fractions over `GR(p^n, f)[X]` with denominators nonzero modulo `p`.
#[derive(Clone, Debug)]
pub struct RatFuncLift {
    poly: PolyRing<GaloisRing>,
}

impl RatFuncLift {
    pub fn galois_ring(&self) -> &GaloisRing {
        &self.poly.coeff
    }
}

impl Ring for RatFuncLift {
    type Elem = RatFunc<GrElem>;

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: Vec::new(),
            den: self.poly.one(),
        }
    }
    fn one(&self) -> Self::Elem {
        RatFunc {
            num: self.poly.one(),
            den: self.poly.one(),
        }
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        RatFunc {
            num: self.poly.from_i64(n),
            den: self.poly.one(),
        }
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return RatFunc {
                num: self.poly.add(&a.num, &b.num),
                den: a.den.clone(),
            };
        }
        RatFunc {
            num: self.poly.add(&self.poly.mul(&a.num, &b.den), &self.poly.mul(&b.num, &a.den)),
            den: self.poly.mul(&a.den, &b.den),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.poly.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        RatFunc {
            num: self.poly.mul(&a.num, &b.num),
            den: self.poly.mul(&a.den, &b.den),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
}

impl WittBase for RatFuncRing {
    type Lift = RatFuncLift;

    fn prime(&self) -> u64 {
        self.field().p()
    }
    fn has_char_p(&self) -> bool {
        true
    }
    fn lift_ring(&self, len: usize) -> RatFuncLift {
        RatFuncLift {
            poly: PolyRing::new(GaloisRing::new(self.field(), len.max(1) as u32)),
        }
    }
    fn lift(&self, lift: &RatFuncLift, a: &Self::Elem) -> RatFunc<GrElem> {
        let gr = lift.galois_ring();
        RatFunc {
            num: a.num.iter().map(|c| gr.lift_digits(c)).collect(),
            den: a.den.iter().map(|c| gr.lift_digits(c)).collect(),
        }
    }
    fn reduce(&self, lift: &RatFuncLift, a: &RatFunc<GrElem>) -> Self::Elem {
        let gr = lift.galois_ring();
        let num = a.num.iter().map(|c| gr.residue(c)).collect();
        let den = a.den.iter().map(|c| gr.residue(c)).collect();
        self.frac(num, den).expect("lifted denominators stay nonzero mod p")
    }
    fn div_p(&self, lift: &RatFuncLift, a: &RatFunc<GrElem>) -> Option<RatFunc<GrElem>> {
        let gr = lift.galois_ring();
        let num = a
            .num
            .iter()
            .map(|c| gr.div_p_exact(c))
            .collect::<Option<Vec<_>>>()?;
        Some(RatFunc {
            num: lift.poly.normalize(num),
            den: a.den.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::witt::WittRing;

    #[test]
    fn frac_normalizes() {
        let k = Fq::prime_field(3).unwrap();
        let r = RatFuncRing::new(&k);
        let e = |v: &[i64]| v.iter().map(|&c| k.from_int(c)).collect::<Vec<_>>();
        // (X^2 - 1) / (2X - 2) = (X + 1)/2 = 2X + 2
        let f = r.frac(e(&[-1, 0, 1]), e(&[-2, 2])).unwrap();
        assert_eq!(f.num(), e(&[2, 2]).as_slice());
        assert_eq!(f.den(), e(&[1]).as_slice());
    }

    #[test]
    fn partial_fractions() {
        let k = Fq::prime_field(3).unwrap();
        let r = RatFuncRing::new(&k);
        let e = |v: &[i64]| v.iter().map(|&c| k.from_int(c)).collect::<Vec<_>>();
        // X^2 + 1/X + 1/(X-1)^2 + 2
        let a = r.add(
            &r.from_poly(e(&[2, 0, 1])),
            &r.add(&r.inv_uniformizer_pow(&Place::Finite(k.zero()), 1), &r.inv_uniformizer_pow(&Place::Finite(k.one()), 2)),
        );
        let (c, parts) = r.principal_parts(&a).unwrap();
        assert_eq!(c, k.from_int(2));
        assert_eq!(
            parts,
            vec![
                (Place::Finite(k.zero()), vec![(1, k.one())]),
                (Place::Finite(k.one()), vec![(2, k.one())]),
                (Place::Infinity, vec![(2, k.one())]),
            ]
        );
    }

    #[test]
    fn irreducible_denominator_rejected() {
        let k = Fq::prime_field(2).unwrap();
        let r = RatFuncRing::new(&k);
        let e = |v: &[i64]| v.iter().map(|&c| k.from_int(c)).collect::<Vec<_>>();
        let a = r.frac(e(&[1]), e(&[1, 1, 1])).unwrap();
        assert_eq!(r.principal_parts(&a).err(), Some(Error::UnsupportedDenominator));
        let k4 = Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap();
        let r4 = RatFuncRing::new(&k4);
        let a4 = r4.frac(vec![k4.one()], vec![k4.one(), k4.one(), k4.one()]).unwrap();
        assert_eq!(r4.finite_poles(&a4).unwrap().len(), 2);
    }

    #[test]
    fn expansion_at_infinity() {
        let k = Fq::prime_field(2).unwrap();
        let r = RatFuncRing::new(&k);
        let lr = LaurentRing::new(k.clone());
        let s = r.expand_at(&r.x(), &Place::Infinity, 5).unwrap();
        assert_eq!(s, lr.series(-1, vec![k.one()], Some(5)));
        let inv = r.inv_uniformizer_pow(&Place::Finite(k.one()), 1);
        let s = r.expand_at(&inv, &Place::Finite(k.one()), 3).unwrap();
        assert_eq!(s, lr.series(-1, vec![k.one()], Some(3)));
        let s = r.expand_at(&inv, &Place::Infinity, 3).unwrap();
        // 1/(X-1) = T/(1-T) at infinity
        assert_eq!(s, lr.series(1, vec![k.one(), k.one()], Some(3)));
    }

    #[test]
    fn witt_square_of_x() {
        let k = Fq::prime_field(2).unwrap();
        let r = RatFuncRing::new(&k);
        let w = WittRing::new(r.clone(), 2);
        let x = w.teichmuller(&r.x());
        let one = w.one();
        let sum = w.add(&x, &one);
        // [X] + [1] = (X + 1, X) for p = 2
        assert_eq!(sum.coords(), &[r.add(&r.x(), &r.one()), r.x()]);
        assert_eq!(w.sub(&sum, &one), x);
    }
}
