//! Normal forms over `k((T))`.

use std::collections::BTreeMap;

use super::{peel, AsReduction, AswBase, FormData};
use crate::algebra::{FFElem, Fq, UnramElem, ZpApprox};
use crate::error::{Error, Result};
use crate::ring::{Invertible, Ring, WittBase, Zmod};
use crate::series::{LaurentRing, LaurentSeries};
use crate::witt::WittVec;

/// `c [alpha] + sum_i c_i [T^-i]`, with `i` prime to `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalStandardForm {
    pub alpha: FFElem,
    pub c: ZpApprox,
    pub terms: BTreeMap<u64, UnramElem>,
}

impl LocalStandardForm {
    pub fn zero(k: &Fq, n: usize) -> Self {
        LocalStandardForm {
            alpha: k.choose_alpha(),
            c: ZpApprox::zero(k.p(), n as u32),
            terms: BTreeMap::new(),
        }
    }

    pub fn precision(&self) -> usize {
        self.c.precision() as usize
    }

    /// Largest pole order `i` with a term.
    pub fn pole_depth(&self) -> u64 {
        self.terms.keys().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.terms.is_empty()
    }

    /// Checks key coprimality, nonzero terms and the choice of `alpha`.
    pub fn validate(&self, k: &Fq) -> Result<()> {
        let n = self.precision();
        if self.alpha != k.choose_alpha() {
            return Err(Error::InvalidInput("alpha differs from the canonical choice".into()));
        }
        for (i, ci) in &self.terms {
            if *i == 0 || i % k.p() == 0 {
                return Err(Error::InvalidInput(format!("term index {i} must be positive and prime to p")));
            }
            if ci.len() != n {
                return Err(Error::PrecisionMismatch(ci.len(), n));
            }
            if ci.coords().iter().all(|d| d.is_zero()) {
                return Err(Error::InvalidInput(format!("term {i} is zero")));
            }
        }
        Ok(())
    }

    pub(crate) fn to_data(&self) -> FormData<()> {
        FormData {
            alpha: self.alpha,
            c: self.c,
            terms: self.terms.iter().map(|(i, c)| (((), *i), c.clone())).collect(),
        }
    }

    pub(crate) fn from_data(d: FormData<()>) -> Self {
        LocalStandardForm {
            alpha: d.alpha,
            c: d.c,
            terms: d.terms.into_iter().map(|(((), i), c)| (i, c)).collect(),
        }
    }
}

/// Default witness budget: `max_j ceil(pole(x_j) / p^j) p^(N-1) + 16`.
pub fn default_budget(k: &Fq, x: &WittVec<LaurentSeries<FFElem>>) -> i64 {
    let lr = LaurentRing::new(k.clone());
    let p = k.p() as i64;
    let weighted = x
        .coords()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let pj = p.pow(j as u32);
            (lr.pole_order(c) + pj - 1) / pj
        })
        .max()
        .unwrap_or(0);
    weighted * p.pow(x.len().saturating_sub(1) as u32) + 16
}

/// Reduction of `f` in `k((T)) / (F - 1)`: returns
/// `f = m alpha + sum d_i T^-i + (w^p - w)` up to `O(T^budget)` in `w`.
pub fn reduce_as(
    k: &Fq,
    f: &LaurentSeries<FFElem>,
    alpha: &FFElem,
    budget: i64,
) -> Result<(u64, BTreeMap<u64, FFElem>, LaurentSeries<FFElem>)> {
    let lr = LaurentRing::new(k.clone());
    let p = k.p();
    if let Some(kt) = f.known_to() {
        if kt < 1 {
            return Err(Error::PrecisionExhausted {
                exponent: 0,
                known_to: kt,
                context: "pole part of a coordinate".into(),
            });
        }
    }
    let bound = f.known_to().map_or(budget, |kt| kt.min(budget)).max(1);
    // positive part: w = -(g + g^p + g^(p^2) + ...)
    let mut witness = lr.big_o(bound);
    let mut g = lr.truncate(&lr.positive_part(f), bound);
    while !g.coeffs().is_empty() {
        witness = lr.sub(&witness, &g);
        g = lr.truncate(&lr.frobenius(&g), bound);
    }
    if f.known_to().is_none() && lr.positive_part(f).coeffs().is_empty() {
        witness = lr.zero();
    }
    // constant term
    let a0 = lr.coeff(f, 0)?;
    let tr_alpha = k.trace(alpha);
    let m = k.trace(&a0) * Zmod::new(p, 1).inverse(&tr_alpha).expect("alpha has nonzero trace") % p;
    let rest = k.sub(&a0, &k.mul(&k.from_int(m as i64), alpha));
    let b = k
        .solve_artin_schreier(&rest)
        .ok_or_else(|| Error::Internal("trace-zero constant has no Artin-Schreier root".into()))?;
    witness = lr.add(&witness, &lr.constant(b));
    // poles, highest first
    let depth = lr.pole_order(f);
    let mut coeffs: Vec<FFElem> = (0..=depth).map(|e| lr.coeff(f, -e).unwrap()).collect();
    let mut terms = BTreeMap::new();
    for e in (1..=depth as usize).rev() {
        let a = coeffs[e];
        if a.is_zero() {
            continue;
        }
        if e as u64 % p != 0 {
            terms.insert(e as u64, a);
        } else {
            let root = k.inv_frobenius(&a);
            let e2 = e / p as usize;
            coeffs[e2] = k.add(&coeffs[e2], &root);
            witness = lr.add(&witness, &lr.monomial(root, -(e2 as i64)));
        }
    }
    Ok((m, terms, witness))
}

impl AswBase for LaurentRing<Fq> {
    type Place = ();

    fn residue_field(&self) -> &Fq {
        self.coeff_ring()
    }
    fn embed_constant(&self, a: &FFElem) -> LaurentSeries<FFElem> {
        self.constant(*a)
    }
    fn inv_uniformizer_pow(&self, _place: &(), i: u64) -> LaurentSeries<FFElem> {
        self.monomial(self.coeff_ring().one(), -(i as i64))
    }
    fn reduce_one(
        &self,
        f: &LaurentSeries<FFElem>,
        alpha: &FFElem,
        budget: i64,
    ) -> Result<AsReduction<(), LaurentSeries<FFElem>>> {
        let (m, terms, witness) = reduce_as(self.coeff_ring(), f, alpha, budget)?;
        Ok(AsReduction {
            m,
            terms: terms.into_iter().map(|(i, d)| (((), i), d)).collect(),
            witness,
        })
    }
    fn vanishes(&self, f: &LaurentSeries<FFElem>, coordinate: usize) -> Result<bool> {
        if let Some(kt) = f.known_to() {
            if kt < 1 {
                return Err(Error::PrecisionExhausted {
                    exponent: 0,
                    known_to: kt,
                    context: format!("remainder coordinate {coordinate}; raise the series budget"),
                });
            }
        }
        Ok(f.terms().all(|(e, c)| e > 0 || c.is_zero()))
    }
}

fn check_input(x: &WittVec<LaurentSeries<FFElem>>) -> Result<()> {
    if x.is_empty() {
        return Err(Error::InvalidInput("Witt vector of length 0".into()));
    }
    for (j, c) in x.coords().iter().enumerate() {
        if let Some(kt) = c.known_to() {
            if kt < 1 {
                return Err(Error::PrecisionExhausted {
                    exponent: 0,
                    known_to: kt,
                    context: format!("input coordinate {j} needs an exact pole part"),
                });
            }
        }
    }
    Ok(())
}

/// The unique representative of `x` modulo `(F - 1) W_N(k((T)))`, with
/// the default witness budget.
pub fn reduce_local(k: &Fq, x: &WittVec<LaurentSeries<FFElem>>) -> Result<LocalStandardForm> {
    reduce_local_with(k, x, default_budget(k, x))
}

/// [`reduce_local`] with an explicit witness budget.
pub fn reduce_local_with(k: &Fq, x: &WittVec<LaurentSeries<FFElem>>, budget: i64) -> Result<LocalStandardForm> {
    check_input(x)?;
    let lr = LaurentRing::new(k.clone());
    let peeled = peel(&lr, x, budget, false)?.expect("unrestricted peeling always completes");
    Ok(LocalStandardForm::from_data(peeled.form))
}

/// Decides whether `x` lies in `(F - 1) W_N(k((T)))`; on success returns a
/// witness `s` with `x - (F s - s)` of positive valuation in every coordinate.
pub fn in_wp_image(
    k: &Fq,
    x: &WittVec<LaurentSeries<FFElem>>,
) -> Result<(bool, Option<WittVec<LaurentSeries<FFElem>>>)> {
    check_input(x)?;
    let lr = LaurentRing::new(k.clone());
    match peel(&lr, x, default_budget(k, x), true)? {
        Some(p) => Ok((true, Some(p.witness))),
        None => Ok((false, None)),
    }
}

/// Exact evaluation of `c [alpha] + sum c_i [T^-i]` in `W_N(k((T)))`.
pub fn eval_form(k: &Fq, form: &LocalStandardForm) -> WittVec<LaurentSeries<FFElem>> {
    let lr = LaurentRing::new(k.clone());
    super::eval_form_data(&lr, form.precision(), &form.to_data())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::WittRing;

    fn setup(p: u64) -> (Fq, LaurentRing<Fq>) {
        let k = Fq::prime_field(p).unwrap();
        (k.clone(), LaurentRing::new(k))
    }

    #[test]
    fn reduce_as_examples() {
        let (k, lr) = setup(2);
        let alpha = k.choose_alpha();
        let (m, terms, w) = reduce_as(&k, &lr.monomial(k.one(), -2), &alpha, 10).unwrap();
        assert_eq!(m, 0);
        assert_eq!(terms, [(1, k.one())].into_iter().collect());
        assert_eq!(w, lr.monomial(k.one(), -1));
        let (m, terms, w) = reduce_as(&k, &lr.one(), &alpha, 10).unwrap();
        assert_eq!((m, terms.len()), (1, 0));
        assert_eq!(w, lr.zero());
        let (m, terms, w) = reduce_as(&k, &lr.monomial(k.one(), 1), &alpha, 10).unwrap();
        assert_eq!((m, terms.len()), (0, 0));
        // -(T + T^2 + T^4 + T^8) + O(T^10)
        let expect = lr.from_terms([1, 2, 4, 8].map(|e| (e, k.one())), Some(10));
        assert_eq!(w, expect);
    }

    #[test]
    fn witness_identity() {
        let (k, lr) = setup(3);
        let alpha = k.choose_alpha();
        let f = lr.exact(-9, (0..14).map(|i| k.from_int(i * 7 + 1)).collect());
        let (m, terms, w) = reduce_as(&k, &f, &alpha, 40).unwrap();
        let mut rebuilt = lr.sub(&lr.frobenius(&w), &w);
        rebuilt = lr.add(&rebuilt, &lr.constant(k.mul(&k.from_int(m as i64), &alpha)));
        for (i, d) in &terms {
            assert_ne!(i % 3, 0);
            rebuilt = lr.add(&rebuilt, &lr.monomial(*d, -(*i as i64)));
        }
        let diff = lr.sub(&rebuilt, &f);
        assert!(diff.terms().all(|(e, c)| e >= 27 || c.is_zero()));
    }

    #[test]
    fn zero_and_wp_image() {
        let (k, lr) = setup(2);
        let w = WittRing::new(lr.clone(), 2);
        assert!(reduce_local(&k, &w.zero()).unwrap().is_zero());
        let x = w.wp(&w.teichmuller(&lr.monomial(k.one(), -1))).unwrap();
        assert!(reduce_local(&k, &x).unwrap().is_zero());
        assert!(in_wp_image(&k, &x).unwrap().0);
        assert!(!in_wp_image(&k, &w.teichmuller(&lr.monomial(k.one(), -1))).unwrap().0);
        assert!(!in_wp_image(&k, &w.one()).unwrap().0);
    }

    #[test]
    fn teichmuller_of_t_minus_two() {
        let (k, lr) = setup(2);
        let w = WittRing::new(lr.clone(), 2);
        let x = w.teichmuller(&lr.monomial(k.one(), -2));
        let sf = reduce_local(&k, &x).unwrap();
        assert!(sf.c.is_zero());
        assert_eq!(sf.terms.len(), 1);
        assert_eq!(sf.terms[&1].coords(), &[k.one(), k.zero()]);
    }

    #[test]
    fn eval_form_examples() {
        let (k, lr) = setup(2);
        let mut sf = LocalStandardForm::zero(&k, 2);
        sf.c = ZpApprox::new(2, 2, 1);
        assert_eq!(eval_form(&k, &sf).coords(), &[lr.one(), lr.zero()]);
        sf.c = ZpApprox::zero(2, 2);
        sf.terms.insert(1, WittVec::from_coords(vec![k.zero(), k.one()]));
        assert_eq!(
            eval_form(&k, &sf).coords(),
            &[lr.zero(), lr.monomial(k.one(), -2)]
        );
        assert_eq!(reduce_local(&k, &eval_form(&k, &sf)).unwrap(), sf);
    }
}
