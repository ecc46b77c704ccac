//! Canonical factorisation `y = lambda T^e prod (1 - a_ij T^i)^(p^j)` and
//! the Teichmüller-lifted logarithmic derivative.

use std::collections::BTreeMap;

use super::laurent::{LaurentRing, LaurentSeries};
use crate::algebra::{FFElem, Fq, GaloisRing, GrElem, ZpApprox};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Series over `Z_q / p^n` (Galois ring model) with finitely many negative
/// exponents and a positive precision bound.
pub type TwoSidedSeries = LaurentSeries<GrElem>;

/// The factorisation of a nonzero Laurent series over `F_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitFactorization {
    pub e: ZpApprox,
    pub lambda: FFElem,
    /// `(i, j) -> a_ij` with `gcd(i, p) = 1` and `a_ij != 0`.
    pub factors: BTreeMap<(u64, u32), FFElem>,
    /// Every factor with `i p^j <= i_max p^j_max` has been extracted.
    pub i_max: u64,
    pub j_max: u32,
}

impl UnitFactorization {
    /// The largest `m = i p^j` up to which the factor list is complete.
    pub fn limit(&self) -> u64 {
        self.i_max * self.e.prime().pow(self.j_max)
    }

    /// Whether all factors with `i <= i_max`, `j <= j_max` are present.
    pub fn covers(&self, i_max: u64, j_max: u32) -> bool {
        i_max * self.e.prime().pow(j_max) <= self.limit()
    }
}

/// Extracts the factors of a one-unit `1 + ...` with `m = i p^j <= limit`.
pub fn factor_one_unit(
    k: &Fq,
    u: &LaurentSeries<FFElem>,
    limit: u64,
) -> Result<BTreeMap<(u64, u32), FFElem>> {
    let p = k.p();
    let lr = LaurentRing::new(k.clone());
    if lr.coeff(u, 0)? != k.one() || u.valuation() != Some(0) {
        return Err(Error::NotAUnit);
    }
    let need = limit as i64 + 1;
    if let Some(kt) = u.known_to() {
        if kt < need {
            return Err(Error::PrecisionExhausted {
                exponent: limit as i64,
                known_to: kt,
                context: "unit factorization".into(),
            });
        }
    }
    // Work on the truncation mod T^(limit+1); dividing by 1 - b T^m only
    // touches exponents >= m.
    let mut cur: Vec<FFElem> = (0..need).map(|e| lr.coeff(u, e).unwrap()).collect();
    let mut factors = BTreeMap::new();
    for m in 1..need as usize {
        let cm = cur[m];
        if cm.is_zero() {
            continue;
        }
        let mut i = m as u64;
        let mut j = 0u32;
        while i % p == 0 {
            i /= p;
            j += 1;
        }
        let a = k.frobenius_pow(&k.neg(&cm), -(j as i64));
        factors.insert((i, j), a);
        // divide by (1 + cm T^m): multiply by sum_k (-cm)^k T^(km)
        for e in m..cur.len() {
            let v = cur[e - m];
            if !v.is_zero() {
                cur[e] = k.sub(&cur[e], &k.mul(&cm, &v));
            }
        }
        debug_assert!(cur[m].is_zero());
    }
    Ok(factors)
}

/// Factors `y = lambda T^e prod (1 - a_ij T^i)^(p^j)` for all
/// `i p^j <= i_max p^j_max`; `e` is recorded modulo `p^(j_max + 1)`.
pub fn unit_factorization(
    k: &Fq,
    y: &LaurentSeries<FFElem>,
    i_max: u64,
    j_max: u32,
) -> Result<UnitFactorization> {
    let p = k.p();
    let e = y.valuation().ok_or(Error::NotAUnit)?;
    let lr = LaurentRing::new(k.clone());
    let lambda = lr.coeff(y, e)?;
    let lam_inv = k.inv(&lambda)?;
    let u = lr.scale_by(&lam_inv, &lr.shift(y, -e));
    let limit = i_max * p.pow(j_max);
    let factors = factor_one_unit(k, &u, limit)?;
    Ok(UnitFactorization {
        e: ZpApprox::new(p, j_max + 1, e),
        lambda,
        factors,
        i_max,
        j_max,
    })
}

/// Re-expands `prod (1 - a_ij T^i)^(p^j)` modulo `T^(bound)`.
pub fn expand_factors(k: &Fq, factors: &BTreeMap<(u64, u32), FFElem>, bound: i64) -> LaurentSeries<FFElem> {
    let lr = LaurentRing::new(k.clone());
    let mut acc = lr.series(0, vec![k.one()], Some(bound));
    for (&(i, j), a) in factors {
        let m = i * k.p().pow(j);
        if m as i64 >= bound {
            continue;
        }
        let apj = k.frobenius_pow(a, j as i64);
        let mut coeffs = vec![k.zero(); m as usize + 1];
        coeffs[0] = k.one();
        coeffs[m as usize] = k.neg(&apj);
        acc = lr.mul(&acc, &lr.series(0, coeffs, Some(bound)));
    }
    acc
}

/// `e/T + d(prod)/prod` for the Teichmüller-lifted product
/// `prod (1 - [a_ij] T^i)^(p^j)` over `GR(p^n, f)`, known below `T^depth`.
pub fn teich_lift_dlog(
    k: &Fq,
    fac: &UnitFactorization,
    depth: u64,
    n: u32,
) -> Result<TwoSidedSeries> {
    let p = k.p();
    if n >= 1 && !fac.covers(depth.max(1), n - 1) {
        return Err(Error::PrecisionExhausted {
            exponent: (depth * p.pow(n - 1)) as i64,
            known_to: fac.limit() as i64 + 1,
            context: "dlog needs a larger factor window".into(),
        });
    }
    if fac.e.precision() < n {
        return Err(Error::PrecisionMismatch(fac.e.precision() as usize, n as usize));
    }
    let gr = GaloisRing::new(k, n);
    let len = depth as usize + 1;
    // coefficients for exponents -1 .. depth-1
    let mut coeffs = vec![gr.zero(); len];
    coeffs[0] = gr.from_i64(fac.e.value() as i64);
    for (&(i, j), a) in &fac.factors {
        if j >= n || i > depth {
            continue;
        }
        let ta = gr.teichmuller(a);
        let weight = gr.from_i64(-((p.pow(j) * i) as i64));
        // -p^j i sum_{l >= 1} [a]^l T^(i l - 1)
        let mut pw = ta;
        let mut e = i;
        while e <= depth {
            let slot = e as usize;
            coeffs[slot] = gr.add(&coeffs[slot], &gr.mul(&weight, &pw));
            pw = gr.mul(&pw, &ta);
            e += i;
        }
    }
    let lr = LaurentRing::new(gr);
    Ok(lr.series(-1, coeffs, Some(depth as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Fq {
        Fq::prime_field(p).unwrap()
    }

    #[test]
    fn trivial_factorizations() {
        let k = f(2);
        let lr = LaurentRing::new(k.clone());
        let one = unit_factorization(&k, &lr.one(), 4, 1).unwrap();
        assert_eq!(one.e.value(), 0);
        assert!(one.factors.is_empty());
        let t3 = unit_factorization(&k, &lr.monomial(k.one(), 3), 4, 1).unwrap();
        assert_eq!(t3.e.value(), 3);
        assert!(t3.factors.is_empty());
    }

    #[test]
    fn one_plus_t_plus_t2() {
        let k = f(2);
        let lr = LaurentRing::new(k.clone());
        let y = lr.series(0, vec![k.one(), k.one(), k.one()], Some(4));
        let fac = unit_factorization(&k, &y, 3, 0).unwrap();
        let expect: BTreeMap<_, _> = [((1, 0), k.one()), ((1, 1), k.one()), ((3, 0), k.one())]
            .into_iter()
            .collect();
        assert_eq!(fac.factors, expect);
        let back = expand_factors(&k, &fac.factors, 4);
        assert_eq!(back, y);
    }

    #[test]
    fn factorization_needs_precision() {
        let k = f(3);
        let lr = LaurentRing::new(k.clone());
        let y = lr.series(0, vec![k.one(), k.one()], Some(3));
        assert!(matches!(
            unit_factorization(&k, &y, 3, 1),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn dlog_of_t_and_of_one_minus_t() {
        let k = f(3);
        let lr = LaurentRing::new(k.clone());
        let fac = unit_factorization(&k, &lr.monomial(k.one(), 1), 4, 0).unwrap();
        let d = teich_lift_dlog(&k, &fac, 4, 1).unwrap();
        let gl = LaurentRing::new(GaloisRing::new(&k, 1));
        assert_eq!(gl.coeff(&d, -1).unwrap(), gl.coeff_ring().one());
        assert!(gl.coeff(&d, 0).unwrap() == gl.coeff_ring().zero());

        let y = lr.series(0, vec![k.one(), k.from_int(-1)], None);
        let fac = unit_factorization(&k, &y, 4, 0).unwrap();
        let d = teich_lift_dlog(&k, &fac, 4, 1).unwrap();
        let gr = gl.coeff_ring();
        for e in 0..4 {
            assert_eq!(gl.coeff(&d, e).unwrap(), gr.from_i64(-1));
        }
    }
}
