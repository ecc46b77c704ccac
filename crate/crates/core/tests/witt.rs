mod common;

use common::Gen;
use num_bigint::BigInt;
use proptest::prelude::*;
use zptower::algebra::Fq;
use zptower::ring::{Ring, WittBase, Zmod};
use zptower::witt::oracle::UniversalPolys;
use zptower::witt::{WittRing, WittVec};
use zptower::LocalField;

fn agree<R: WittBase>(w: &WittRing<R>, u: &UniversalPolys, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>)
where
    R::Elem: PartialEq + std::fmt::Debug,
{
    let base = w.base();
    assert_eq!(w.add(a, b), u.add(base, a, b).unwrap());
    assert_eq!(w.sub(a, b), u.sub(base, a, b).unwrap());
    assert_eq!(w.mul(a, b), u.mul(base, a, b).unwrap());
    assert_eq!(w.neg(a), u.neg(base, a).unwrap());
}

#[test]
fn finite_fields_match_oracle() {
    let mut g = Gen::new(7);
    for (p, f) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let k = Fq::with_degree(p, f).unwrap();
        for n in 1..=3 {
            let u = UniversalPolys::new(p, n).unwrap();
            let w = WittRing::new(k.clone(), n);
            for _ in 0..20 {
                let a = g.unram(&k, n);
                let b = g.unram(&k, n);
                agree(&w, &u, &a, &b);
            }
        }
    }
}

#[test]
fn laurent_coordinates_match_oracle() {
    let mut g = Gen::new(8);
    let k = Fq::prime_field(3).unwrap();
    let lr = LocalField::new(k.clone());
    for n in 1..=3 {
        let u = UniversalPolys::new(3, n).unwrap();
        let w = WittRing::new(lr.clone(), n);
        for _ in 0..10 {
            let a = WittVec::from_coords((0..n).map(|_| g.laurent(&k, -3, 2)).collect());
            let b = WittVec::from_coords((0..n).map(|_| g.laurent(&k, -2, 3)).collect());
            agree(&w, &u, &a, &b);
        }
    }
}

#[test]
fn p5_window() {
    let mut g = Gen::new(9);
    let k = Fq::prime_field(5).unwrap();
    let u = UniversalPolys::new(5, 2).unwrap();
    let w = WittRing::new(k.clone(), 2);
    for _ in 0..30 {
        let a = g.unram(&k, 2);
        let b = g.unram(&k, 2);
        agree(&w, &u, &a, &b);
    }
}

#[test]
fn prime_field_is_integers_mod_p_power() {
    let k = Fq::prime_field(3).unwrap();
    let w = WittRing::new(k.clone(), 3);
    let two = w.from_integer(&BigInt::from(2));
    assert_eq!(w.add(&w.one(), &w.one()), two);
    // [-1] = (2, 0, 0) and 2 = -1 + 3
    assert_eq!(two.coord(0), &k.from_int(2));
    assert_eq!(two.coord(1), &k.one());
    let three = w.from_integer(&BigInt::from(3));
    assert_eq!(three.coords(), &[k.zero(), k.one(), k.zero()]);
    assert!(w.is_zero(&w.from_integer(&BigInt::from(27))));
}

fn witt_f4(n: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..4, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_f4(a in witt_f4(3), b in witt_f4(3), c in witt_f4(3)) {
        let k = Fq::with_degree(2, 2).unwrap();
        let w = WittRing::new(k.clone(), 3);
        let v = |x: &[u64]| WittVec::from_coords(x.iter().map(|&i| k.element_at(i)).collect());
        let (a, b, c) = (v(&a), v(&b), v(&c));
        prop_assert_eq!(w.add(&a, &b), w.add(&b, &a));
        prop_assert_eq!(w.mul(&a, &w.add(&b, &c)), w.add(&w.mul(&a, &b), &w.mul(&a, &c)));
        prop_assert_eq!(w.mul(&w.mul(&a, &b), &c), w.mul(&a, &w.mul(&b, &c)));
        prop_assert_eq!(w.sub(&w.add(&a, &b), &b), a.clone());
        // V F = p
        let vf = w.verschiebung(&w.frobenius(&a).unwrap());
        prop_assert_eq!(vf, w.scalar_mul(&BigInt::from(2), &a));
    }

    #[test]
    fn frobenius_is_additive_mod_3(a in prop::collection::vec(0u64..3, 3), b in prop::collection::vec(0u64..3, 3)) {
        let k = Zmod::new(3, 1);
        let w = WittRing::new(k, 3);
        let a = WittVec::from_coords(a);
        let b = WittVec::from_coords(b);
        prop_assert_eq!(
            w.frobenius(&w.add(&a, &b)).unwrap(),
            w.add(&w.frobenius(&a).unwrap(), &w.frobenius(&b).unwrap())
        );
    }
}
