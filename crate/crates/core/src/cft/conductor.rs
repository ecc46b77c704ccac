//! Conductor exponents and ramification breaks from valuation data, and a
//! brute-force conductor computed from the symbol itself.

use super::{symbol_residue, LocalUnit, ValuationProfile};
use crate::algebra::{Fq, ZpApprox};
use crate::asw::LocalStandardForm;
use crate::error::{Error, Result};
use crate::series::LaurentRing;
use crate::ring::Ring;

/// `u_n = 1 + max { i p^(n - v_i - 1) : v_i < n }`, or `0` when no entry has
/// `v_i < n`.
pub fn conductor_exponent(p: u64, vp: &ValuationProfile, n: u32) -> u64 {
    vp.entries()
        .iter()
        .filter(|(_, &v)| v < n)
        .map(|(&i, &v)| i * p.pow(n - v - 1))
        .max()
        .map_or(0, |m| m + 1)
}

/// Smallest integer `t` with `i p^t >= r` (may be negative).
fn ceil_log(p: u64, r: u64, i: u64) -> i64 {
    if i >= r {
        let mut s = 0;
        while r * p.pow(s + 1) <= i {
            s += 1;
        }
        -(s as i64)
    } else {
        let mut t = 0;
        while i * p.pow(t) < r {
            t += 1;
        }
        t as i64
    }
}

/// An upper ramification break, raw and clamped at zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Break {
    pub raw: i64,
    pub clamped: u32,
}

/// `b_0 = min v_i`, `b_r = min_i (v_i + ceil(log_p(r / i)))` for `r >= 1`.
pub fn ramification_break(p: u64, vp: &ValuationProfile, r: u64) -> Result<Break> {
    if vp.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let raw = if r == 0 {
        vp.min_valuation().unwrap() as i64
    } else {
        vp.entries()
            .iter()
            .map(|(&i, &v)| v as i64 + ceil_log(p, r, i))
            .min()
            .unwrap()
    };
    Ok(Break {
        raw,
        clamped: raw.max(0) as u32,
    })
}

/// Result of the brute-force conductor search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConductorOracle {
    /// Least `m` with `[x, U_m) = 0 mod p^n`.
    pub conductor: u64,
    /// `[x, T) mod p^n`, the unramified part.
    pub uniformizer_symbol: u64,
}

/// Searches `[x, 1 - a T^m) mod p^n` over all `a` in `k^*` and `1 <= m <=
/// i_bound`. Fails if the symbol is still nonzero at `m = i_bound`.
pub fn conductor_via_symbol(k: &Fq, sf: &LocalStandardForm, n: u32, i_bound: u64) -> Result<ConductorOracle> {
    let lr = LaurentRing::new(k.clone());
    let zero_e = ZpApprox::zero(k.p(), n);
    let mut last_nonzero = 0;
    for m in 1..=i_bound {
        let nonzero = k.elements().skip(1).any(|a| {
            let mut coeffs = vec![k.zero(); m as usize + 1];
            coeffs[0] = k.one();
            coeffs[m as usize] = k.neg(&a);
            let y = LocalUnit {
                e: zero_e,
                one_unit: lr.exact(0, coeffs),
            };
            !symbol_residue(k, sf, &y, n).expect("exact unit").is_zero()
        });
        if nonzero {
            last_nonzero = m;
        }
    }
    if last_nonzero == i_bound && i_bound > 0 {
        return Err(Error::BoundTooSmall(i_bound));
    }
    let t = LocalUnit {
        e: ZpApprox::new(k.p(), n, 1),
        one_unit: lr.one(),
    };
    let uniformizer_symbol = symbol_residue(k, sf, &t, n)?.value();
    Ok(ConductorOracle {
        conductor: if last_nonzero == 0 { 0 } else { last_nonzero + 1 },
        uniformizer_symbol,
    })
}
