//! Artin-Schreier-Witt normal forms.
//!
//! A Witt vector over `K = k((T))` or `K = k(X)` is reduced modulo
//! `F - 1` to `c [alpha] + sum c_i [pi^-i]` by peeling one `V`-adic layer
//! at a time: coordinate `j` of the remainder is reduced in `K / (F - 1)K`,
//! the result is folded into the form, and the remainder is recomputed with
//! exact Witt arithmetic and checked to lie in `V^(j+1) W`.

mod global;
mod local;

use std::collections::BTreeMap;
use std::fmt::Debug;

pub use global::{completion, eval_global_form, reduce_as_global, reduce_global_p1, GlobalStandardForm};
pub use local::{
    default_budget, eval_form, in_wp_image, reduce_as, reduce_local, reduce_local_with, LocalStandardForm,
};

use crate::algebra::{FFElem, Fq, UnramElem, ZpApprox};
use crate::error::{Error, Result};
use crate::ring::{Ring, WittBase};
use crate::witt::{WittRing, WittVec};

/// Result of reducing one element `f` of `K` modulo `(F - 1)K`:
/// `f = m alpha + sum_(place, i) d pi^-i + witness^p - witness`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsReduction<P, E> {
    pub m: u64,
    pub terms: BTreeMap<(P, u64), FFElem>,
    pub witness: E,
}

/// A field of characteristic `p` with a fixed uniformizer at each relevant
/// place, over which `K / (F - 1)K` can be computed explicitly.
pub trait AswBase: WittBase {
    type Place: Ord + Clone + Debug;

    fn residue_field(&self) -> &Fq;
    fn embed_constant(&self, a: &FFElem) -> Self::Elem;
    fn inv_uniformizer_pow(&self, place: &Self::Place, i: u64) -> Self::Elem;
    /// Reduction of a single element; `budget` bounds series witnesses.
    fn reduce_one(&self, f: &Self::Elem, alpha: &FFElem, budget: i64) -> Result<AsReduction<Self::Place, Self::Elem>>;
    /// Whether `f` vanishes up to an element of `(F - 1)` applied to the
    /// valuation ring; fails if too little of `f` is known to decide.
    fn vanishes(&self, f: &Self::Elem, coordinate: usize) -> Result<bool>;
}

/// Data of a normal form over any base: `c [alpha] + sum c_(place,i) [pi^-i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormData<P> {
    pub alpha: FFElem,
    pub c: ZpApprox,
    pub terms: BTreeMap<(P, u64), UnramElem>,
}

type LiftElem<B> = <<B as WittBase>::Lift as Ring>::Elem;

/// Lifted ghost components of `c [alpha] + sum c_i [pi^-i]`.
fn form_ghost<B: AswBase>(base: &B, w: &WittRing<B>, form: &FormData<B::Place>) -> Vec<LiftElem<B>> {
    let n = w.len();
    let l = w.lift_ring();
    let p = w.prime();
    let mut acc: Vec<LiftElem<B>> = vec![l.zero(); n];
    if !form.c.is_zero() {
        let beta = w.teichmuller(&base.embed_constant(&form.alpha));
        let c = l.from_i64(form.c.value() as i64);
        for (a, g) in acc.iter_mut().zip(w.lifted_ghost(&beta)) {
            *a = l.add(a, &l.mul(&c, &g));
        }
    }
    for ((place, i), ci) in &form.terms {
        let embedded = ci.map(|d| base.embed_constant(d));
        let gc = w.lifted_ghost(&embedded);
        let mut mono = base.lift(l, &base.inv_uniformizer_pow(place, *i));
        for (k, a) in acc.iter_mut().enumerate() {
            *a = l.add(a, &l.mul(&gc[k], &mono));
            if k + 1 < n {
                mono = l.pow(&mono, p);
            }
        }
    }
    acc
}

/// Evaluates a form as a Witt vector over the base.
pub fn eval_form_data<B: AswBase>(base: &B, n: usize, form: &FormData<B::Place>) -> WittVec<B::Elem> {
    let w = WittRing::new(base.clone(), n);
    w.from_lifted_ghost(&form_ghost(base, &w, form))
}

/// `x - form - (F s - s)`, through a single ghost round trip.
fn remainder<B: AswBase>(
    base: &B,
    w: &WittRing<B>,
    gx: &[LiftElem<B>],
    form: &FormData<B::Place>,
    s: &WittVec<B::Elem>,
) -> WittVec<B::Elem> {
    let l = w.lift_ring();
    let gf = form_ghost(base, w, form);
    let gs = w.lifted_ghost(s);
    let fs = s.map(|c| base.frobenius(c));
    let gfs = w.lifted_ghost(&fs);
    let g: Vec<_> = (0..w.len())
        .map(|k| {
            let t = l.sub(&gx[k], &gf[k]);
            l.add(&l.sub(&t, &gfs[k]), &gs[k])
        })
        .collect();
    w.from_lifted_ghost(&g)
}

/// Outcome of the stagewise peeling.
pub(crate) struct Peeled<P, E> {
    pub form: FormData<P>,
    pub witness: WittVec<E>,
}

/// Stagewise reduction. With `require_trivial`, stops with `Ok(None)` as
/// soon as a stage produces a nonzero class.
pub(crate) fn peel<B: AswBase>(
    base: &B,
    x: &WittVec<B::Elem>,
    budget: i64,
    require_trivial: bool,
) -> Result<Option<Peeled<B::Place, B::Elem>>> {
    let n = x.len();
    let k = base.residue_field().clone();
    let p = k.p();
    let alpha = k.choose_alpha();
    let w = WittRing::new(base.clone(), n);
    let gx = w.lifted_ghost(x);
    let mut form = FormData {
        alpha,
        c: ZpApprox::zero(p, n as u32),
        terms: BTreeMap::new(),
    };
    let mut s = w.zero();
    let mut r = x.clone();
    for j in 0..n {
        let red = base.reduce_one(r.coord(j), &alpha, budget)?;
        let nontrivial = red.m != 0 || !red.terms.is_empty();
        let witness = if nontrivial {
            if require_trivial {
                return Ok(None);
            }
            let pj = p.pow(j as u32);
            form.c = form.c.add(&ZpApprox::new(p, n as u32, (red.m * pj) as i64));
            for (key, d) in red.terms {
                let entry = form
                    .terms
                    .entry(key)
                    .or_insert_with(|| WittVec::from_coords(vec![k.zero(); n]));
                let mut coords = entry.clone().into_coords();
                coords[j] = k.frobenius_pow(&d, j as i64);
                *entry = WittVec::from_coords(coords);
            }
            r = remainder(base, &w, &gx, &form, &s);
            let again = base.reduce_one(r.coord(j), &alpha, budget)?;
            if again.m != 0 || !again.terms.is_empty() {
                return Err(Error::Internal(format!(
                    "stage {j}: folded layer does not reduce to zero"
                )));
            }
            again.witness
        } else {
            red.witness
        };
        let layer = w.verschiebung_pow(&w.teichmuller(&witness), j);
        s = w.add(&s, &layer);
        r = remainder(base, &w, &gx, &form, &s);
        for i in 0..=j {
            if !base.vanishes(r.coord(i), i)? {
                return Err(Error::Internal(format!(
                    "stage {j}: remainder coordinate {i} does not vanish"
                )));
            }
        }
    }
    Ok(Some(Peeled { form, witness: s }))
}
