//! Seeded self-checks: every fast algorithm against an independent one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zptower::algebra::{FFElem, Fq, UnramRing, ZpApprox};
use zptower::asw::{eval_form, reduce_local, LocalStandardForm};
use zptower::cft::{
    conductor_exponent, conductor_via_symbol, factor_unit, symbol_classical, symbol_residue, symbol_sum, LocalUnit,
    ValuationProfile,
};
use zptower::ring::Ring;
use zptower::tower::{genus_sequence, unit_root_family};
use zptower::witt::oracle::UniversalPolys;
use zptower::witt::{WittRing, WittVec};
use zptower::{LocalElem, LocalField};

use crate::report::{OracleResult, SuiteResult};

struct Gen(ChaCha8Rng);

impl Gen {
    fn below(&mut self, n: u64) -> u64 {
        self.0.gen_range(0..n)
    }

    fn fq(&mut self, k: &Fq) -> FFElem {
        k.element_at(self.below(k.order()))
    }

    fn laurent(&mut self, k: &Fq, lo: i64, hi: i64) -> LocalElem {
        let coeffs = (lo..=hi)
            .map(|_| if self.0.gen_bool(0.5) { self.fq(k) } else { k.zero() })
            .collect();
        LocalField::new(k.clone()).exact(lo, coeffs)
    }

    fn form(&mut self, k: &Fq, n: usize, depth: u64) -> LocalStandardForm {
        let p = k.p();
        let ur = UnramRing::new(k, n);
        let mut sf = LocalStandardForm::zero(k, n);
        sf.c = ZpApprox::new(p, n as u32, self.below(p.pow(n as u32)) as i64);
        for i in (1..=depth).filter(|i| i % p != 0) {
            if self.0.gen_bool(0.6) {
                let c = WittVec::from_coords((0..n).map(|_| self.fq(k)).collect());
                if ur.valuation(&c).is_some() {
                    sf.terms.insert(i, c);
                }
            }
        }
        sf
    }

    fn unit(&mut self, k: &Fq, n: u32, deg: usize) -> LocalUnit {
        let mut coeffs = vec![k.one()];
        coeffs.extend((0..deg).map(|_| self.fq(k)));
        let e = ZpApprox::new(k.p(), n, self.below(k.p().pow(n)) as i64);
        LocalUnit::new(e, LocalField::new(k.clone()).exact(0, coeffs)).expect("constant term is 1")
    }
}

type Check = Result<(), String>;

fn suite(name: &str, cases: u32, mut body: impl FnMut(u32) -> Check) -> SuiteResult {
    let failure = (0..cases).find_map(|i| body(i).err().map(|e| format!("case {i}: {e}")));
    SuiteResult {
        name: name.into(),
        cases,
        passed: failure.is_none(),
        failure,
    }
}

fn ok<T>(r: zptower::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn witt_suite(g: &mut Gen) -> SuiteResult {
    let windows = [(2, 1, 3), (3, 1, 3), (2, 2, 3), (3, 2, 2), (5, 1, 2)];
    suite("witt_vs_universal_polynomials", 100, |_| {
        let (p, f, max_n) = windows[g.below(windows.len() as u64) as usize];
        let n = 1 + g.below(max_n) as usize;
        let k = ok(Fq::with_degree(p, f))?;
        let w = WittRing::new(k.clone(), n);
        let u = ok(UniversalPolys::new(p, n))?;
        let a = WittVec::from_coords((0..n).map(|_| g.fq(&k)).collect());
        let b = WittVec::from_coords((0..n).map(|_| g.fq(&k)).collect());
        let same = w.add(&a, &b) == ok(u.add(&k, &a, &b))? && w.mul(&a, &b) == ok(u.mul(&k, &a, &b))?;
        same.then_some(()).ok_or_else(|| format!("p={p} f={f} n={n}: {a:?} {b:?}"))
    })
}

fn asw_suite(g: &mut Gen) -> SuiteResult {
    suite("normal_form_invariance", 30, |_| {
        let p = [2, 3][g.below(2) as usize];
        let k = ok(Fq::prime_field(p))?;
        let n = 1 + g.below(2) as usize;
        let lr = LocalField::new(k.clone());
        let w = WittRing::new(lr, n);
        let sf = g.form(&k, n, 8);
        let x = eval_form(&k, &sf);
        if ok(reduce_local(&k, &x))? != sf {
            return Err(format!("p={p} n={n}: normal form is not fixed"));
        }
        let s = WittVec::from_coords((0..n).map(|_| g.laurent(&k, -3, 2)).collect());
        let shifted = w.add(&x, &ok(w.wp(&s))?);
        if ok(reduce_local(&k, &shifted))? != sf {
            return Err(format!("p={p} n={n}: class changed under F - 1"));
        }
        Ok(())
    })
}

fn symbol_suite(g: &mut Gen) -> SuiteResult {
    suite("symbol_formulas", 40, |_| {
        let p = [2, 3, 5][g.below(3) as usize];
        let k = ok(Fq::with_degree(p, 1 + g.below(2) as usize))?;
        let n = 1 + g.below(if p == 5 { 2 } else { 3 }) as u32;
        let sf = g.form(&k, n as usize, 6);
        let y = g.unit(&k, n, 5);
        let res = ok(symbol_residue(&k, &sf, &y, n))?;
        let fac = ok(factor_unit(&k, &y, sf.pole_depth(), n))?;
        let sum = ok(symbol_sum(&k, &sf, &fac, n))?;
        if res != sum {
            return Err(format!("p={p} n={n}: {} vs {}", res.value(), sum.value()));
        }
        if n == 1 {
            let c = ok(symbol_classical(&k, eval_form(&k, &sf).coord(0), &y))?;
            if c != res.value() {
                return Err(format!("p={p}: classical {c} vs {}", res.value()));
            }
        }
        Ok(())
    })
}

fn conductor_suite(g: &mut Gen) -> SuiteResult {
    suite("conductor_vs_symbol_search", 10, |_| {
        let p = [2, 3][g.below(2) as usize];
        let k = ok(Fq::prime_field(p))?;
        let n = 1 + g.below(2) as u32;
        let sf = g.form(&k, n as usize, 5);
        let u = conductor_exponent(p, &ValuationProfile::from_form(&k, &sf), n);
        let found = ok(conductor_via_symbol(&k, &sf, n, 2 * u + 2))?.conductor;
        (u == found)
            .then_some(())
            .ok_or_else(|| format!("p={p} n={n}: formula {u}, search {found}"))
    })
}

fn genus_suite(g: &mut Gen) -> SuiteResult {
    suite("unit_root_genus_closed_form", 8, |_| {
        let p = [2, 3, 5][g.below(3) as usize];
        let d = loop {
            let d = 1 + g.below(6);
            if d % p != 0 {
                break d;
            }
        };
        let k = ok(Fq::prime_field(p))?;
        let datum = ok(unit_root_family(&k, &BTreeMap::from([(d, k.one())]), 1))?;
        let report = ok(genus_sequence(&ok(datum.profile())?, 5))?;
        let r = |a: BigInt| BigRational::from_integer(a);
        for row in &report.rows {
            let pn = BigInt::from(p).pow(row.n);
            let two_g_minus_2 = r(BigInt::from(d) * &pn * &pn) / r(BigInt::from(p + 1))
                - r(pn)
                - BigRational::new(BigInt::from(p + 1 + d), BigInt::from(p + 1));
            let expected = (two_g_minus_2 + r(2.into())) / r(2.into());
            if r(row.genus.clone()) != expected {
                return Err(format!("p={p} d={d} n={}: {} vs {expected}", row.n, row.genus));
            }
        }
        Ok(())
    })
}

pub fn run(seed: u64) -> OracleResult {
    let mut g = Gen(ChaCha8Rng::seed_from_u64(seed));
    let suites = vec![
        witt_suite(&mut g),
        asw_suite(&mut g),
        symbol_suite(&mut g),
        conductor_suite(&mut g),
        genus_suite(&mut g),
    ];
    let all_passed = suites.iter().all(|s| s.passed);
    OracleResult {
        seed,
        suites,
        all_passed,
    }
}
