mod common;

use common::Gen;
use proptest::prelude::*;
use zptower::algebra::{Fq, UnramRing, ZpApprox};
use zptower::asw::{eval_form, LocalStandardForm};
use zptower::cft::{
    conductor_exponent, conductor_via_symbol, factor_unit, ramification_break, symbol_classical, symbol_residue,
    symbol_sum, LocalUnit, ValuationProfile,
};
use zptower::ring::Ring;
use zptower::LocalField;

#[test]
fn formulas_agree() {
    let mut g = Gen::new(31);
    for p in [2, 3, 5] {
        for f in [1, 2] {
            let k = Fq::with_degree(p, f).unwrap();
            for n in 1..=3u32 {
                for _ in 0..8 {
                    let sf = g.local_form(&k, n as usize, 6);
                    let y = g.local_unit(&k, n, 5);
                    let res = symbol_residue(&k, &sf, &y, n).unwrap();
                    let fac = factor_unit(&k, &y, sf.pole_depth(), n).unwrap();
                    assert_eq!(res, symbol_sum(&k, &sf, &fac, n).unwrap(), "p={p} f={f} n={n}");
                    if n == 1 {
                        let x = eval_form(&k, &sf);
                        assert_eq!(res.value(), symbol_classical(&k, x.coord(0), &y).unwrap());
                    }
                }
            }
        }
    }
}

fn add_forms(k: &Fq, a: &LocalStandardForm, b: &LocalStandardForm) -> LocalStandardForm {
    let ur = UnramRing::new(k, a.precision());
    let mut out = a.clone();
    out.c = a.c.add(&b.c);
    for (i, c) in &b.terms {
        let sum = match out.terms.get(i) {
            Some(x) => ur.add(x, c),
            None => c.clone(),
        };
        out.terms.insert(*i, sum);
    }
    out.terms.retain(|_, c| ur.valuation(c).is_some());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bilinear(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let k = Fq::prime_field(3).unwrap();
        let lr = LocalField::new(k.clone());
        let n = 2;
        let x1 = g.local_form(&k, 2, 5);
        let x2 = g.local_form(&k, 2, 5);
        let y1 = g.local_unit(&k, n, 4);
        let y2 = g.local_unit(&k, n, 4);
        let s = |x: &LocalStandardForm, y: &LocalUnit| symbol_residue(&k, x, y, n).unwrap();
        prop_assert_eq!(s(&add_forms(&k, &x1, &x2), &y1), s(&x1, &y1).add(&s(&x2, &y1)));
        let y12 = LocalUnit::new(y1.e.add(&y2.e), lr.mul(&y1.one_unit, &y2.one_unit)).unwrap();
        prop_assert_eq!(s(&x1, &y12), s(&x1, &y1).add(&s(&x1, &y2)));
    }
}

#[test]
fn conductor_matches_brute_force() {
    let mut g = Gen::new(32);
    for (p, f) in [(2, 1), (3, 1), (2, 2)] {
        let k = Fq::with_degree(p, f).unwrap();
        for n in 1..=3u32 {
            for _ in 0..3 {
                let mut sf = g.local_form(&k, n as usize, 7);
                sf.c = ZpApprox::zero(p, n);
                let vp = ValuationProfile::from_form(&k, &sf);
                let u = conductor_exponent(p, &vp, n);
                let bound = sf.pole_depth() * p.pow(n - 1) + 1;
                let oracle = conductor_via_symbol(&k, &sf, n, bound).unwrap();
                assert_eq!(oracle.conductor, u, "p={p} f={f} n={n} {vp:?}");
            }
        }
    }
}

#[test]
fn unit_root_conductor_and_breaks() {
    let k = Fq::prime_field(3).unwrap();
    for d in [1u64, 2, 4] {
        let vp = ValuationProfile::new(3, [(d, 0)]).unwrap();
        for n in 1..=4 {
            assert_eq!(conductor_exponent(3, &vp, n), 1 + d * 3u64.pow(n - 1));
        }
    }
    let mut sf = LocalStandardForm::zero(&k, 2);
    sf.terms.insert(2, UnramRing::new(&k, 2).teichmuller(&k.one()));
    let o = conductor_via_symbol(&k, &sf, 2, 8).unwrap();
    assert_eq!(o.conductor, 7);
    assert!(conductor_via_symbol(&k, &sf, 2, 6).is_err());
    let vp = ValuationProfile::from_form(&k, &sf);
    assert_eq!(ramification_break(3, &vp, 0).unwrap().raw, 0);
    assert_eq!(ramification_break(3, &vp, 6).unwrap().raw, 1);
}
