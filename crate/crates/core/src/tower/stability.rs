//! Classification of genus-stable towers and extraction of the quadratic
//! `g_n = a p^(2n) + b p^n + c`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::genus::{genus_closed, phi};
use super::profile::{cmp_weight, PlaceData, RamificationProfile};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

/// How an outcome was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Exact,
    Declared,
    Horizon(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition {
    pub outcome: Outcome,
    pub basis: Basis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable {
        a: BigRational,
        b: BigRational,
        c: BigRational,
        m: u32,
    },
    Unstable {
        witness: String,
    },
    Unknown {
        horizon: u32,
    },
}

/// Per-place data: `a_p` and the maximiser `(i*, v*)` of `i p^-v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceStability {
    pub label: String,
    pub a_p: Option<BigRational>,
    pub maximiser: Option<(u64, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Eventual quadratic form of `g_n`.
    pub quadratic_fit: Condition,
    /// Each set `{ i p^-v }` has a maximum.
    pub max_attained: Condition,
    /// Each `u_(p,n) = 1 + a_p p^n` eventually.
    pub conductor_form: Condition,
    pub disagreement: bool,
    pub places: Vec<PlaceStability>,
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// `(a, b, c)` from `sum_p d_p u_(p,n) = A p^n + B` for `n >= m`.
fn quadratic(profile: &RamificationProfile, a_sum: &BigRational, b_sum: &BigInt, m: u32) -> Result<[BigRational; 3]> {
    let p = profile.p;
    let pr = rat(BigInt::from(p));
    let mut c_m = BigInt::zero();
    for j in 1..m {
        c_m += phi(p, j) * profile.conductor_degree(j)?;
    }
    let two = rat(BigInt::from(2));
    let a = a_sum * &pr / (&two * (&pr + BigRational::one()));
    let b = rat(BigInt::from(profile.g0) * 2 - 2 + b_sum) / &two;
    let tail = a_sum * rat(pow(p, 2 * m - 1)) / (&pr + BigRational::one());
    let c = (rat(c_m) - tail - rat(b_sum * pow(p, m - 1)) + &two) / &two;
    Ok([a, b, c])
}

fn predict(p: u64, [a, b, c]: &[BigRational; 3], n: u32) -> BigRational {
    a * rat(pow(p, 2 * n)) + b * rat(pow(p, n)) + c
}

fn verify(profile: &RamificationProfile, abc: &[BigRational; 3], levels: impl Iterator<Item = u32>) -> Result<()> {
    for n in levels {
        let g = genus_closed(profile, n)?;
        if predict(profile.p, abc, n) != rat(g.clone()) {
            return Err(Error::Internal(format!("fitted quadratic misses g_{n} = {g}")));
        }
    }
    Ok(())
}

fn combine(outcomes: impl Iterator<Item = Condition>) -> Condition {
    let mut out = Condition {
        outcome: Outcome::Holds,
        basis: Basis::Exact,
    };
    for c in outcomes {
        match (out.outcome, c.outcome) {
            (Outcome::Fails, _) => {}
            (_, Outcome::Fails) => out = c,
            (Outcome::Unknown, _) => {}
            (_, Outcome::Unknown) => out = c,
            _ => {
                if c.basis != Basis::Exact {
                    out.basis = c.basis;
                }
            }
        }
    }
    out
}

/// Classifies a geometric profile. Finite data are always stable; streams
/// are judged by their declaration and by the data up to their horizon.
pub fn stability_classify(profile: &RamificationProfile) -> Result<StabilityReport> {
    if profile.n_c != 0 {
        return Err(Error::InvalidInput("stability needs a geometric profile (n_c = 0)".into()));
    }
    if profile.n_u().is_none() {
        return Err(Error::ConstantTower);
    }
    let p = profile.p;
    let mut places = Vec::new();
    let mut per_max = Vec::new();
    let mut per_form = Vec::new();
    for pl in &profile.places {
        let (maximiser, cond) = match &pl.data {
            PlaceData::Finite(_) => (
                pl.finite_max(p),
                Condition {
                    outcome: Outcome::Holds,
                    basis: Basis::Exact,
                },
            ),
            PlaceData::Procedural(s) => {
                let outcome = match s.declared() {
                    None => Outcome::Unknown,
                    Some(d) if d.attained => Outcome::Holds,
                    Some(_) => Outcome::Fails,
                };
                let observed = s.terms().iter().copied().max_by(|a, b| cmp_weight(p, *a, *b));
                let maximiser = if outcome == Outcome::Holds { observed } else { None };
                (
                    maximiser,
                    Condition {
                        outcome,
                        basis: Basis::Declared,
                    },
                )
            }
        };
        let a_p = maximiser.map(|(i, v)| rat(BigInt::from(i)) / rat(pow(p, v + 1)));
        places.push(PlaceStability {
            label: pl.label.clone(),
            a_p,
            maximiser,
        });
        per_max.push(cond);
        per_form.push(cond);
    }
    let max_attained = combine(per_max.into_iter());
    let conductor_form = combine(per_form.into_iter());

    let (verdict, quadratic_fit) = match profile.horizon() {
        None => {
            let mut a_sum = BigRational::zero();
            let mut b_sum = BigInt::zero();
            let mut m = 1;
            for (pl, st) in profile.places.iter().zip(&places) {
                if let (Some(a_p), Some((_, v))) = (&st.a_p, st.maximiser) {
                    a_sum += rat(BigInt::from(pl.degree)) * a_p;
                    b_sum += pl.degree;
                    m = m.max(v + 1);
                }
            }
            let abc = quadratic(profile, &a_sum, &b_sum, m)?;
            verify(profile, &abc, m..=m + 5)?;
            let [a, b, c] = abc;
            (
                Verdict::Stable { a, b, c, m },
                Condition {
                    outcome: Outcome::Holds,
                    basis: Basis::Exact,
                },
            )
        }
        Some(h) => {
            if h < 3 {
                return Err(Error::HorizonTooSmall(h));
            }
            let fit = fit_through_horizon(profile, h)?;
            let declared_everywhere = profile.places.iter().all(|pl| match &pl.data {
                PlaceData::Procedural(s) => s.declared().is_some(),
                PlaceData::Finite(_) => true,
            });
            let quad = Condition {
                outcome: if fit.is_some() { Outcome::Holds } else { Outcome::Unknown },
                basis: Basis::Horizon(h),
            };
            let verdict = match (declared_everywhere, fit) {
                (false, _) => Verdict::Unknown { horizon: h },
                (true, Some((abc, m))) => {
                    let [a, b, c] = abc;
                    Verdict::Stable { a, b, c, m }
                }
                (true, None) if max_attained.outcome == Outcome::Fails => Verdict::Unstable {
                    witness: format!("declared supremum not attained and no eventual linear conductor form through level {h}"),
                },
                (true, None) => Verdict::Unknown { horizon: h },
            };
            (verdict, quad)
        }
    };
    let decided: Vec<Outcome> = [quadratic_fit, max_attained, conductor_form]
        .iter()
        .map(|c| c.outcome)
        .filter(|o| *o != Outcome::Unknown)
        .collect();
    let disagreement = decided.windows(2).any(|w| w[0] != w[1]);
    Ok(StabilityReport {
        verdict,
        quadratic_fit,
        max_attained,
        conductor_form,
        disagreement,
        places,
    })
}

/// Looks for `sum_p d_p u_(p,n) = A p^n + B` on at least three consecutive
/// levels ending at `h`, and fits the quadratic from the start of that run.
fn fit_through_horizon(profile: &RamificationProfile, h: u32) -> Result<Option<([BigRational; 3], u32)>> {
    let p = profile.p;
    let us: Vec<BigInt> = (1..=h).map(|n| profile.conductor_degree(n)).collect::<Result<_>>()?;
    let u = |n: u32| rat(us[n as usize - 1].clone());
    let a_sum = (u(h) - u(h - 1)) / rat(pow(p, h) - pow(p, h - 1));
    let b_sum = u(h) - &a_sum * rat(pow(p, h));
    let mut m = h;
    while m > 1 && u(m - 1) == &a_sum * rat(pow(p, m - 1)) + &b_sum {
        m -= 1;
    }
    if h - m < 2 || !b_sum.is_integer() {
        return Ok(None);
    }
    let abc = quadratic(profile, &a_sum, &b_sum.to_integer(), m)?;
    verify(profile, &abc, m..=h)?;
    Ok(Some((abc, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cft::ValuationProfile;
    use crate::tower::profile::{PlaceProfile, Stream, SupDeclaration};

    fn place(data: PlaceData) -> PlaceProfile {
        PlaceProfile {
            label: "inf".into(),
            degree: 1,
            data,
        }
    }

    #[test]
    fn single_term() {
        let vp = ValuationProfile::new(3, [(1, 0)]).unwrap();
        let prof = RamificationProfile::new(3, 0, 0, vec![place(PlaceData::Finite(vp))]).unwrap();
        let r = stability_classify(&prof).unwrap();
        assert_eq!(r.places[0].a_p, Some(BigRational::new(1.into(), 3.into())));
        match r.verdict {
            Verdict::Stable { m, a, .. } => {
                assert_eq!(m, 1);
                assert_eq!(a, BigRational::new(1.into(), 8.into()));
            }
            v => panic!("{v:?}"),
        }
        assert!(!r.disagreement);
    }

    #[test]
    fn discrepancy_stream() {
        let decl = SupDeclaration {
            sup: BigRational::from_integer(2.into()),
            attained: false,
        };
        let s = Stream::from_fn(2, 8, |k| Some(2u64.pow(k + 1) - 1), Some(decl)).unwrap();
        let prof = RamificationProfile::new(2, 0, 0, vec![place(PlaceData::Procedural(s.clone()))]).unwrap();
        let r = stability_classify(&prof).unwrap();
        assert_eq!(r.quadratic_fit.outcome, Outcome::Holds);
        assert_eq!(r.max_attained.outcome, Outcome::Fails);
        assert_eq!(r.conductor_form.outcome, Outcome::Fails);
        assert!(r.disagreement);
        assert!(matches!(r.verdict, Verdict::Stable { .. }));

        let bare = Stream::new(2, s.terms().to_vec(), 8, None).unwrap();
        let prof = RamificationProfile::new(2, 0, 0, vec![place(PlaceData::Procedural(bare))]).unwrap();
        assert_eq!(stability_classify(&prof).unwrap().verdict, Verdict::Unknown { horizon: 8 });
        let short = Stream::new(2, vec![(1, 0)], 2, None).unwrap();
        let prof = RamificationProfile::new(2, 0, 0, vec![place(PlaceData::Procedural(short))]).unwrap();
        assert_eq!(stability_classify(&prof), Err(Error::HorizonTooSmall(2)));
    }
}
