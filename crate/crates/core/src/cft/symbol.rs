//! The Schmid-Witt symbol `[x, y)` by the residue formula and by the
//! explicit double sum, plus the classical `n = 1` pairing.

use super::LocalUnit;
use crate::algebra::{FFElem, Fq, GaloisRing, GrElem, UnramRing, ZpApprox};
use crate::asw::LocalStandardForm;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::{factor_one_unit, teich_lift_dlog, LaurentRing, LaurentSeries, TwoSidedSeries, UnitFactorization};

fn check_n(sf: &LocalStandardForm, n: u32) -> Result<()> {
    if n == 0 || n as usize > sf.precision() {
        return Err(Error::PrecisionMismatch(n as usize, sf.precision()));
    }
    Ok(())
}

/// Coefficients of the form in `GR(p^n, f)`: `(c beta, [(i, c_i)])`.
fn form_in_gr(k: &Fq, sf: &LocalStandardForm, n: u32) -> (GrElem, Vec<(u64, GrElem)>) {
    let ur = UnramRing::new(k, n as usize);
    let gr = ur.galois_ring();
    let beta = gr.teichmuller(&sf.alpha);
    let c = gr.from_i64(sf.c.reduce(n).value() as i64);
    let terms = sf
        .terms
        .iter()
        .map(|(i, ci)| {
            let truncated = ur.witt().truncate(ci, n as usize);
            (*i, ur.to_gr(&truncated))
        })
        .collect();
    (gr.mul(&c, &beta), terms)
}

/// `x~ = c beta + sum c_i T^-i` as a series over `GR(p^n, f)`.
pub fn lift_form(k: &Fq, sf: &LocalStandardForm, n: u32) -> TwoSidedSeries {
    let (cb, terms) = form_in_gr(k, sf, n);
    let lr = LaurentRing::new(GaloisRing::new(k, n));
    let mut pieces = vec![(0i64, cb)];
    pieces.extend(terms.into_iter().map(|(i, c)| (-(i as i64), c)));
    lr.from_terms(pieces, None)
}

/// Factorisation of a local unit, complete for `i <= depth`, `j < n`.
pub fn factor_unit(k: &Fq, y: &LocalUnit, depth: u64, n: u32) -> Result<UnitFactorization> {
    if y.e.precision() < n {
        return Err(Error::PrecisionMismatch(y.e.precision() as usize, n as usize));
    }
    let i_max = depth.max(1);
    let j_max = n - 1;
    let factors = factor_one_unit(k, &y.one_unit, i_max * k.p().pow(j_max))?;
    Ok(UnitFactorization {
        e: y.e.reduce(n),
        lambda: k.one(),
        factors,
        i_max,
        j_max,
    })
}

/// `Tr_{Z_q/Z_p} Res(x~ dlog y~) mod p^n`.
pub fn symbol_residue(k: &Fq, sf: &LocalStandardForm, y: &LocalUnit, n: u32) -> Result<ZpApprox> {
    check_n(sf, n)?;
    let depth = sf.pole_depth();
    let fac = factor_unit(k, y, depth, n)?;
    let dlog = teich_lift_dlog(k, &fac, depth.max(1), n)?;
    let x = lift_form(k, sf, n);
    let gr = GaloisRing::new(k, n);
    let lr = LaurentRing::new(gr.clone());
    let prod = lr.mul(&x, &dlog);
    let res = lr.residue(&prod)?;
    Ok(ZpApprox::new(k.p(), n, gr.trace(&res) as i64))
}

/// `c e Tr(beta) - sum_j p^j Tr(sum_i c_i sum_(l | i) l [a_lj]^(i/l)) mod p^n`.
pub fn symbol_sum(k: &Fq, sf: &LocalStandardForm, fac: &UnitFactorization, n: u32) -> Result<ZpApprox> {
    check_n(sf, n)?;
    let depth = sf.pole_depth();
    if !fac.covers(depth.max(1), n - 1) {
        return Err(Error::WindowTooSmall {
            i_max: fac.i_max,
            j_max: fac.j_max,
            need_i: depth,
            need_j: n - 1,
        });
    }
    if fac.e.precision() < n {
        return Err(Error::PrecisionMismatch(fac.e.precision() as usize, n as usize));
    }
    let p = k.p();
    let gr = GaloisRing::new(k, n);
    let (cb, terms) = form_in_gr(k, sf, n);
    let e = gr.from_i64(fac.e.reduce(n).value() as i64);
    let mut total = gr.trace(&gr.mul(&cb, &e)) as i64;
    let modulus = p.pow(n) as i64;
    for j in 0..n {
        let mut inner = gr.zero();
        for (i, ci) in &terms {
            let mut div_sum = gr.zero();
            for l in (1..=*i).filter(|l| i % l == 0) {
                if let Some(a) = fac.factors.get(&(l, j)) {
                    let ta = gr.pow(&gr.teichmuller(a), i / l);
                    div_sum = gr.add(&div_sum, &gr.scale(l as i64, &ta));
                }
            }
            inner = gr.add(&inner, &gr.mul(ci, &div_sum));
        }
        let pj = p.pow(j) as i64;
        total = (total - pj * gr.trace(&inner) as i64).rem_euclid(modulus);
    }
    Ok(ZpApprox::new(p, n, total))
}

/// The classical Artin-Schreier pairing `Tr_{k/F_p} Res(x dy/y)` with `x`
/// any Laurent series over `k` and `y = T^e u`.
pub fn symbol_classical(k: &Fq, x: &LaurentSeries<FFElem>, y: &LocalUnit) -> Result<u64> {
    let lr = LaurentRing::new(k.clone());
    let depth = lr.pole_order(x).max(1);
    let u = lr.truncate(&y.one_unit, depth + 1);
    let du = lr.derivative(&u);
    let inv = lr.invert(&u)?;
    let dlog = lr.add(
        &lr.mul(&du, &inv),
        &lr.monomial(k.from_int((y.e.value() % k.p()) as i64), -1),
    );
    let res = lr.residue(&lr.mul(x, &dlog))?;
    Ok(k.trace(&res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::WittVec;

    fn form(k: &Fq, n: usize, c: i64, terms: &[(u64, Vec<FFElem>)]) -> LocalStandardForm {
        let mut sf = LocalStandardForm::zero(k, n);
        sf.c = ZpApprox::new(k.p(), n as u32, c);
        for (i, coords) in terms {
            sf.terms.insert(*i, WittVec::from_coords(coords.clone()));
        }
        sf
    }

    #[test]
    fn p3_examples() {
        let k = Fq::prime_field(3).unwrap();
        let lr = LaurentRing::new(k.clone());
        let sf = form(&k, 1, 0, &[(1, vec![k.one()])]);
        let y = LocalUnit::new(
            ZpApprox::zero(3, 1),
            lr.exact(0, vec![k.one(), k.from_int(-1)]),
        )
        .unwrap();
        assert_eq!(symbol_residue(&k, &sf, &y, 1).unwrap().value(), 2);
        let fac = factor_unit(&k, &y, 1, 1).unwrap();
        assert_eq!(symbol_sum(&k, &sf, &fac, 1).unwrap().value(), 2);

        let sf = form(&k, 1, 1, &[]);
        let t = LocalUnit::new(ZpApprox::new(3, 1, 1), lr.one()).unwrap();
        assert_eq!(symbol_residue(&k, &sf, &t, 1).unwrap().value(), 1);
        let fac = factor_unit(&k, &t, 1, 1).unwrap();
        assert_eq!(symbol_sum(&k, &sf, &fac, 1).unwrap().value(), 1);
    }

    #[test]
    fn window_too_small() {
        let k = Fq::prime_field(2).unwrap();
        let lr = LaurentRing::new(k.clone());
        let sf = form(&k, 2, 0, &[(3, vec![k.one(), k.zero()])]);
        let y = LocalUnit::new(ZpApprox::zero(2, 2), lr.exact(0, vec![k.one(), k.one()])).unwrap();
        let fac = factor_unit(&k, &y, 1, 2).unwrap();
        assert!(matches!(
            symbol_sum(&k, &sf, &fac, 2),
            Err(Error::WindowTooSmall { .. })
        ));
    }
}
