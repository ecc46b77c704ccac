//! Universal Witt polynomials, built symbolically from the ghost identities
//! and evaluated by substitution. Independent of the lifting path in
//! [`super::WittRing`]; used as a reference implementation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::WittVec;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A polynomial with integer coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = IntPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = IntPoly::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_default();
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *out.entry(e).or_default() += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        IntPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn pow(&self, mut k: u64) -> IntPoly {
        let mut acc = IntPoly::constant(self.nvars, BigInt::one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient; `None` if some coefficient is
    /// not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(IntPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitutes ring elements for the variables.
    pub fn eval<R: Ring>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        assert_eq!(vals.len(), self.nvars);
        let mut max_exp = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(x);
            }
        }
        let powers: Vec<Vec<R::Elem>> = vals
            .iter()
            .zip(&max_exp)
            .map(|(v, &m)| {
                let mut row = vec![ring.one()];
                for _ in 0..m {
                    let next = ring.mul(row.last().unwrap(), v);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut term = ring.from_bigint(c);
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = ring.mul(&term, &powers[i][x as usize]);
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }
}

/// Sum, difference and product polynomials `S_i`, `D_i`, `P_i` in the
/// variables `x_0..x_{n-1}, y_0..y_{n-1}`.
#[derive(Clone, Debug)]
pub struct UniversalPolys {
    p: u64,
    n: usize,
    sum: Vec<IntPoly>,
    diff: Vec<IntPoly>,
    prod: Vec<IntPoly>,
}

fn ghost_poly(p: u64, vars: &[IntPoly], i: usize) -> IntPoly {
    let nv = vars[0].nvars;
    let mut acc = IntPoly::zero(nv);
    for (j, v) in vars.iter().enumerate().take(i + 1) {
        let pj = BigInt::from(p).pow(j as u32);
        acc = acc.add(&v.pow(p.pow((i - j) as u32)).scale(&pj));
    }
    acc
}

fn solve_ghost(p: u64, n: usize, target: impl Fn(usize) -> IntPoly, nv: usize) -> Vec<IntPoly> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rest = target(i);
        for (j, s) in out.iter().enumerate() {
            let pj = BigInt::from(p).pow(j as u32);
            rest = rest.sub(&s.pow(p.pow((i - j) as u32)).scale(&pj));
        }
        let d = BigInt::from(p).pow(i as u32);
        let s = rest
            .div_exact(&d)
            .unwrap_or_else(|| panic!("ghost identity not integral at level {i}"));
        out.push(s);
    }
    debug_assert!(out.iter().all(|s| s.nvars == nv));
    out
}

impl UniversalPolys {
    /// Builds and verifies the polynomials for `W_n` at the prime `p`.
    pub fn new(p: u64, n: usize) -> Result<Self> {
        let allowed = match p {
            2 | 3 => n <= 3,
            5 => n <= 2,
            _ => false,
        };
        if !allowed || n == 0 {
            return Err(Error::OracleTooLarge { p, len: n });
        }
        let nv = 2 * n;
        let xs: Vec<IntPoly> = (0..n).map(|i| IntPoly::var(nv, i)).collect();
        let ys: Vec<IntPoly> = (0..n).map(|i| IntPoly::var(nv, n + i)).collect();
        let gx: Vec<IntPoly> = (0..n).map(|i| ghost_poly(p, &xs, i)).collect();
        let gy: Vec<IntPoly> = (0..n).map(|i| ghost_poly(p, &ys, i)).collect();
        let sum = solve_ghost(p, n, |i| gx[i].add(&gy[i]), nv);
        let diff = solve_ghost(p, n, |i| gx[i].sub(&gy[i]), nv);
        let prod = solve_ghost(p, n, |i| gx[i].mul(&gy[i]), nv);
        let polys = UniversalPolys {
            p,
            n,
            sum,
            diff,
            prod,
        };
        polys.verify(&gx, &gy);
        Ok(polys)
    }

    fn verify(&self, gx: &[IntPoly], gy: &[IntPoly]) {
        for i in 0..self.n {
            let gs = ghost_poly(self.p, &self.sum, i);
            let gd = ghost_poly(self.p, &self.diff, i);
            let gp = ghost_poly(self.p, &self.prod, i);
            assert_eq!(gs, gx[i].add(&gy[i]), "sum polynomial fails ghost identity");
            assert_eq!(gd, gx[i].sub(&gy[i]), "difference polynomial fails ghost identity");
            assert_eq!(gp, gx[i].mul(&gy[i]), "product polynomial fails ghost identity");
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn sum_poly(&self, i: usize) -> &IntPoly {
        &self.sum[i]
    }
    pub fn diff_poly(&self, i: usize) -> &IntPoly {
        &self.diff[i]
    }
    pub fn prod_poly(&self, i: usize) -> &IntPoly {
        &self.prod[i]
    }

    fn apply<R: Ring>(
        &self,
        polys: &[IntPoly],
        ring: &R,
        a: &WittVec<R::Elem>,
        b: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        if a.len() != self.n || b.len() != self.n {
            return Err(Error::LengthMismatch(a.len().max(b.len()), self.n));
        }
        let vals: Vec<R::Elem> = a.coords().iter().chain(b.coords()).cloned().collect();
        Ok(WittVec::from_coords(
            polys.iter().map(|s| s.eval(ring, &vals)).collect(),
        ))
    }

    pub fn add<R: Ring>(&self, ring: &R, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.apply(&self.sum, ring, a, b)
    }

    pub fn sub<R: Ring>(&self, ring: &R, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.apply(&self.diff, ring, a, b)
    }

    pub fn mul<R: Ring>(&self, ring: &R, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.apply(&self.prod, ring, a, b)
    }

    pub fn neg<R: Ring>(&self, ring: &R, a: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        let zero = WittVec::from_coords(vec![ring.zero(); self.n]);
        self.sub(ring, &zero, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zmod;

    #[test]
    fn first_sum_polynomials() {
        let u = UniversalPolys::new(2, 2).unwrap();
        let expect = IntPoly::var(4, 1)
            .add(&IntPoly::var(4, 3))
            .sub(&IntPoly::var(4, 0).mul(&IntPoly::var(4, 2)));
        assert_eq!(u.sum_poly(1), &expect);

        let u3 = UniversalPolys::new(3, 2).unwrap();
        let x0 = IntPoly::var(4, 0);
        let y0 = IntPoly::var(4, 2);
        let cross = x0.pow(2).mul(&y0).add(&x0.mul(&y0.pow(2)));
        let expect = IntPoly::var(4, 1).add(&IntPoly::var(4, 3)).sub(&cross);
        assert_eq!(u3.sum_poly(1), &expect);
        assert_eq!(u3.prod_poly(0), &x0.mul(&y0));
    }

    #[test]
    fn window_is_enforced() {
        assert!(UniversalPolys::new(5, 2).is_ok());
        assert_eq!(
            UniversalPolys::new(5, 3).err(),
            Some(Error::OracleTooLarge { p: 5, len: 3 })
        );
        assert!(UniversalPolys::new(7, 1).is_err());
    }

    #[test]
    fn one_plus_one_in_w2_f2() {
        let u = UniversalPolys::new(2, 2).unwrap();
        let f2 = Zmod::new(2, 1);
        let one = WittVec::from_coords(vec![1, 0]);
        assert_eq!(u.add(&f2, &one, &one).unwrap().coords(), &[0, 1]);
        assert_eq!(u.neg(&f2, &one).unwrap().coords(), &[1, 1]);
    }
}
