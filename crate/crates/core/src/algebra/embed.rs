//! Embeddings `F_{p^e} -> F_{p^f}` for `e | f`.

use std::collections::HashMap;

use super::field::{FFElem, Fq};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A fixed embedding of `base` into `ext`, sending the generator of `base`
/// to the first root (in enumeration order) of its minimal polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: Fq,
    ext: Fq,
    image: Vec<FFElem>,
    preimage: HashMap<FFElem, FFElem>,
}

impl Embedding {
    pub fn new(base: &Fq, ext: &Fq) -> Result<Self> {
        if base.p() != ext.p() || ext.degree() % base.degree() != 0 {
            return Err(Error::SpecMismatch);
        }
        let h = base.spec().modulus.clone();
        let theta = if base.degree() == 1 {
            ext.zero()
        } else if base == ext {
            ext.generator()
        } else {
            ext.elements()
                .find(|x| {
                    let v = h
                        .iter()
                        .rev()
                        .fold(ext.zero(), |acc, &c| ext.add(&ext.mul(&acc, x), &ext.from_int(c as i64)));
                    v.is_zero()
                })
                .ok_or(Error::SpecMismatch)?
        };
        let mut image = Vec::with_capacity(base.order() as usize);
        let mut preimage = HashMap::new();
        for b in base.elements() {
            let coeffs = b.coeffs(base.degree());
            let v = coeffs
                .iter()
                .rev()
                .fold(ext.zero(), |acc, &c| ext.add(&ext.mul(&acc, &theta), &ext.from_int(c as i64)));
            image.push(v);
            preimage.insert(v, b);
        }
        Ok(Embedding {
            base: base.clone(),
            ext: ext.clone(),
            image,
            preimage,
        })
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }
    pub fn ext(&self) -> &Fq {
        &self.ext
    }
    pub fn degree(&self) -> usize {
        self.ext.degree() / self.base.degree()
    }

    pub fn apply(&self, a: &FFElem) -> FFElem {
        self.image[self.base.index_of(a) as usize]
    }

    /// The preimage of `a`, if `a` lies in the image of `base`.
    pub fn restrict(&self, a: &FFElem) -> Option<FFElem> {
        self.preimage.get(a).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    #[test]
    fn f4_into_f16() {
        let f4 = Fq::new(FieldSpec::new(2, vec![1, 1, 1])).unwrap();
        let f16 = Fq::with_degree(2, 4).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(&f4.mul(&a, &b)), f16.mul(&e.apply(&a), &e.apply(&b)));
                assert_eq!(e.apply(&f4.add(&a, &b)), f16.add(&e.apply(&a), &e.apply(&b)));
            }
            assert_eq!(e.restrict(&e.apply(&a)), Some(a));
        }
        assert!(Embedding::new(&f4, &Fq::with_degree(2, 3).unwrap()).is_err());
    }
}
