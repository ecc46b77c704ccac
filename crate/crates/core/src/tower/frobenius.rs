//! Frobenius elements at unramified points.

use crate::algebra::{Embedding, FFElem, Fq, ZpApprox};
use crate::error::{Error, Result};
use crate::poly::{RatFunc, RatFuncRing};
use crate::witt::{evaluate, prime_witt_value, trace_witt, WittRing, WittVec};

/// `-Tr_(W(k(z)) / Z_p)(a(z)) mod p^n`, where `ext = k(z)`.
pub fn frobenius_at(
    r: &RatFuncRing,
    a: &WittVec<RatFunc<FFElem>>,
    ext: &Fq,
    z: &FFElem,
    n: u32,
) -> Result<ZpApprox> {
    let k = r.field();
    if n == 0 || a.len() < n as usize {
        return Err(Error::PrecisionMismatch(n as usize, a.len()));
    }
    let into_ext = Embedding::new(k, ext)?;
    let generated = num_integer::lcm(k.degree(), ext.orbit_size(z));
    if generated != ext.degree() {
        return Err(Error::InvalidInput(format!(
            "the point generates a field of degree {generated}, not {}",
            ext.degree()
        )));
    }
    let w = WittRing::new(r.clone(), a.len());
    let a = w.truncate(a, n as usize);
    let value = evaluate(r, &a, &into_ext, z)?;
    let fp = Fq::prime_field(k.p())?;
    let tr = trace_witt(&value, &Embedding::new(&fp, ext)?)?;
    Ok(ZpApprox::new(k.p(), n, prime_witt_value(k.p(), &tr) as i64).neg())
}
