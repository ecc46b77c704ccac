//! Ring contexts.
//!
//! Coefficient rings in this crate carry runtime data (a prime, a modulus,
//! a precision), so arithmetic goes through a context object rather than
//! through operator traits on the elements. Every algorithm that is generic
//! over its scalars (Witt vectors, series, polynomials) is written against
//! [`Ring`] and friends.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// A commutative ring with identity, accessed through a context value.
pub trait Ring: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Image of an arbitrary integer under the structure map `Z -> R`.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        if let Some(small) = n.to_i64() {
            return self.from_i64(small);
        }
        let radix = BigInt::from(1u64 << 32);
        let (q, r) = n.div_mod_floor(&radix);
        let high = self.from_bigint(&q);
        let shifted = self.mul(&high, &self.from_i64(1i64 << 32));
        self.add(&shifted, &self.from_i64(r.to_i64().expect("remainder below 2^32")))
    }

    fn scale(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_i64(n), a)
    }
}

/// Rings in which units can be recognised and inverted.
pub trait Invertible: Ring {
    /// `None` when `a` is not a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Coefficient rings whose Witt vectors are computed through the ghost map
/// of a lift.
///
/// For a ring `A` with `p` nilpotent-free behaviour modulo `p^len`, the lift
/// is a ring `L` with `L/p = A` (characteristic `p` case) or
/// `L = Z/p^(M+len-1)` over `A = Z/p^M`. Witt sums and products are then
/// obtained from ghost components in `L`, with exact divisions by `p`.
pub trait WittBase: Ring {
    type Lift: Ring;

    fn prime(&self) -> u64;
    /// Whether the Frobenius on Witt vectors is coordinatewise (char p).
    fn has_char_p(&self) -> bool;
    fn lift_ring(&self, len: usize) -> Self::Lift;
    fn lift(&self, lift: &Self::Lift, a: &Self::Elem) -> <Self::Lift as Ring>::Elem;
    fn reduce(&self, lift: &Self::Lift, a: &<Self::Lift as Ring>::Elem) -> Self::Elem;
    /// Exact division by `p` in the lift; `None` when not divisible.
    fn div_p(
        &self,
        lift: &Self::Lift,
        a: &<Self::Lift as Ring>::Elem,
    ) -> Option<<Self::Lift as Ring>::Elem>;

    /// The absolute Frobenius `x -> x^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.prime())
    }
}

/// `Z / m` for a modulus `m < 2^31`, usually a prime power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zmod {
    p: u64,
    exp: u32,
    modulus: u64,
}

impl Zmod {
    /// `Z / p^exp`.
    pub fn new(p: u64, exp: u32) -> Self {
        let modulus = p.checked_pow(exp).expect("modulus overflow");
        assert!(modulus < (1 << 31), "modulus too large");
        Zmod { p, exp, modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.modulus
    }

    pub fn from_integer(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.from_integer(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.modulus == 0
    }
}

impl Invertible for Zmod {
    fn inverse(&self, a: &u64) -> Option<u64> {
        let g = (*a as i64).extended_gcd(&(self.modulus as i64));
        if g.gcd != 1 {
            return None;
        }
        Some(self.from_integer(g.x))
    }
}

impl WittBase for Zmod {
    type Lift = Zmod;

    fn prime(&self) -> u64 {
        self.p
    }
    fn has_char_p(&self) -> bool {
        self.exp == 1
    }
    fn lift_ring(&self, len: usize) -> Zmod {
        Zmod::new(self.p, self.exp + len.saturating_sub(1) as u32)
    }
    fn lift(&self, _lift: &Zmod, a: &u64) -> u64 {
        *a
    }
    fn reduce(&self, _lift: &Zmod, a: &u64) -> u64 {
        a % self.modulus
    }
    fn div_p(&self, _lift: &Zmod, a: &u64) -> Option<u64> {
        (a % self.p == 0).then(|| a / self.p)
    }
}

/// The integers, used for torsion-free ghost computations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// Exact division by an integer in a torsion-free ring, used by `from_ghost`.
pub trait ExactDivision: Ring {
    fn div_exact(&self, a: &Self::Elem, d: u64) -> Option<Self::Elem>;
}

impl ExactDivision for Integers {
    fn div_exact(&self, a: &BigInt, d: u64) -> Option<BigInt> {
        let d = BigInt::from(d);
        let (q, r) = a.div_rem(&d);
        r.is_zero().then_some(q)
    }
}

/// `Z/p^M` is not torsion free; division by `p` returns the representative
/// in `[0, p^(M-1))`, correct modulo `p^(M-1)`.
impl ExactDivision for Zmod {
    fn div_exact(&self, a: &u64, d: u64) -> Option<u64> {
        (a % d == 0).then(|| a / d)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basic() {
        let r = Zmod::new(3, 2);
        assert_eq!(r.add(&5, &7), 3);
        assert_eq!(r.neg(&1), 8);
        assert_eq!(r.mul(&4, &7), 1);
        assert_eq!(r.inverse(&4), Some(7));
        assert_eq!(r.inverse(&3), None);
        assert_eq!(r.pow(&2, 6), 1);
    }

    #[test]
    fn from_bigint_large() {
        let r = Zmod::new(5, 3);
        let n: BigInt = BigInt::from(1u64 << 40) * 12345 + 17;
        let expect = (&n % BigInt::from(125u64)).to_u64().unwrap();
        assert_eq!(r.from_bigint(&n), expect);
        let neg = -n.clone();
        assert_eq!(r.from_bigint(&neg), (125 - expect) % 125);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
