//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zptower::algebra::{FFElem, Fq, UnramElem, UnramRing, ZpApprox};
use zptower::asw::LocalStandardForm;
use zptower::cft::LocalUnit;
use zptower::ring::Ring;
use zptower::witt::WittVec;
use zptower::{LocalElem, LocalField};

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    pub fn fq(&mut self, k: &Fq) -> FFElem {
        k.element_at(self.below(k.order()))
    }

    pub fn nonzero(&mut self, k: &Fq) -> FFElem {
        k.element_at(1 + self.below(k.order() - 1))
    }

    /// Laurent polynomial with exponents in `lo..=hi`, roughly half zero.
    pub fn laurent(&mut self, k: &Fq, lo: i64, hi: i64) -> LocalElem {
        let lr = LocalField::new(k.clone());
        let coeffs = (lo..=hi)
            .map(|_| if self.rng.gen_bool(0.5) { self.fq(k) } else { k.zero() })
            .collect();
        lr.exact(lo, coeffs)
    }

    pub fn unram(&mut self, k: &Fq, n: usize) -> UnramElem {
        WittVec::from_coords((0..n).map(|_| self.fq(k)).collect())
    }

    /// Random element of `Z_q` with valuation at least `v`.
    pub fn unram_val(&mut self, k: &Fq, n: usize, v: usize) -> UnramElem {
        let mut c: Vec<FFElem> = (0..n).map(|_| self.fq(k)).collect();
        for x in c.iter_mut().take(v.min(n)) {
            *x = k.zero();
        }
        WittVec::from_coords(c)
    }

    pub fn zp(&mut self, p: u64, n: u32) -> ZpApprox {
        ZpApprox::new(p, n, self.below(p.pow(n)) as i64)
    }

    /// Random normal form with poles of order at most `depth`.
    pub fn local_form(&mut self, k: &Fq, n: usize, depth: u64) -> LocalStandardForm {
        let p = k.p();
        let mut sf = LocalStandardForm::zero(k, n);
        sf.c = self.zp(p, n as u32);
        for i in (1..=depth).filter(|i| i % p != 0) {
            if self.rng.gen_bool(0.6) {
                sf.terms.insert(i, self.unram(k, n));
            }
        }
        let ur = UnramRing::new(k, n);
        sf.terms.retain(|_, c| ur.valuation(c).is_some());
        sf
    }

    /// `T^e u` with `u` a one-unit polynomial of degree at most `deg`.
    pub fn local_unit(&mut self, k: &Fq, n: u32, deg: i64) -> LocalUnit {
        let lr = LocalField::new(k.clone());
        let mut coeffs = vec![k.one()];
        coeffs.extend((1..=deg).map(|_| self.fq(k)));
        LocalUnit::new(self.zp(k.p(), n), lr.exact(0, coeffs)).unwrap()
    }
}
