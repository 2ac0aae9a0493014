use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{a_sum_stream, direct_members, Representation, SumRequest, SumScope};
use crate::cfrac::GammaFamily;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::qforms::{IntPoly, QForm};
use crate::real::Real;

/// Outcome of comparing a conditioned stream with the finite set it is
/// supposed to enumerate.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub representation: Representation,
    #[serde(serialize_with = "crate::ser::big")]
    pub discriminant: BigInt,
    pub x: Real,
    /// `Q_D<x>` restricted to the scope, by direct enumeration.
    pub expected: Vec<QForm>,
    /// Images `Q|gamma` of the pairs passing the conditions, sorted.
    pub mapped: Vec<QForm>,
    pub pairs: usize,
}

/// Checks that the pairs kept by a conditioned representation map
/// bijectively onto `Q_D<x>`: every image lies in the set, no image is hit
/// twice, and every element is hit.
pub fn bijection_audit(scope: &SumScope, x: &BigRational, rep: Representation) -> Result<AuditReport> {
    if !matches!(
        rep,
        Representation::SimpleGamma | Representation::ReducedGammaPrime | Representation::SimpleGamma1
    ) {
        return Err(Error::InvalidArgument(format!("{rep:?} is not a conditioned stream")));
    }
    let xr = Real::from(x.clone());
    let mut req = SumRequest::new(scope.clone(), 2, xr.clone(), rep).with_ledger();
    req.depth = usize::MAX;
    let res = a_sum_stream(&req)?;
    let mut pairs = Vec::new();
    for row in res.ledger.iter().filter(|r| r.included) {
        pairs.push((row.image.clone().expect("form rows"), row.form.clone().expect("form rows"), row.matrix.clone()));
    }
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let expected = direct_members(scope, x)?;
    let mapped: Vec<QForm> = pairs.iter().map(|p| p.0.clone()).collect();
    let fail = |what: String| Err(Error::AuditFailure(format!("{rep:?}, D = {}, x = {x}: {what}", scope.discriminant())));
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            return fail(format!("{} is hit by ({}, {}) and ({}, {})", w[0].0, w[0].1, w[0].2, w[1].1, w[1].2));
        }
    }
    for (img, q, g) in &pairs {
        if expected.binary_search(img).is_err() {
            return fail(format!("({q}, {g}) maps to {img}, which is not in the set"));
        }
    }
    for e in &expected {
        if mapped.binary_search(e).is_err() {
            return fail(format!("{e} is not hit"));
        }
    }
    Ok(AuditReport {
        representation: rep,
        discriminant: scope.discriminant(),
        x: xr,
        expected,
        mapped,
        pairs: pairs.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticAudit {
    pub seed: IntPoly,
    /// Simple members of the orbit that were tested.
    pub samples: Vec<IntPoly>,
    /// Pairs `(P, gamma)` passing the conditions; each image was checked.
    pub pairs: usize,
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Mat2 {
    let mut g = Mat2::identity();
    for _ in 0..len {
        let step = match rng.gen_range(0..3) {
            0 => Mat2::t(),
            1 => Mat2::new(1, -1, 0, 1),
            _ => Mat2::s(),
        };
        g = g.mul(&step);
    }
    g
}

/// Well-definedness of the degree-`d` analogue of the simple-form map: for
/// simple members `P` of the orbit of `seed` (`P(inf) > 0 > P(0)`) and every
/// `gamma` in Gamma(x) with `P(gamma(inf)) < 0 < P(floor(gamma(x)))`, the
/// image satisfies `(P|gamma)(inf) < 0 < (P|gamma)(x)`.
pub fn quartic_sample_audit(seed: &IntPoly, d: usize, x: &BigRational, tries: usize, rng_seed: u64) -> Result<QuarticAudit> {
    seed.check_fd(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut samples = Vec::new();
    for _ in 0..tries {
        let len = rng.gen_range(0..8);
        let p = seed.slash(&random_word(&mut rng, len), d)?;
        if p.coeff(d).is_positive() && p.coeff(0).is_negative() && !samples.contains(&p) {
            samples.push(p);
        }
    }
    samples.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    let xr = Real::from(x.clone());
    let elems: Vec<_> = GammaFamily::new(&xr).collect::<Result<_>>()?;
    let mut pairs = 0;
    for p in &samples {
        for e in &elems {
            let g = &e.matrix;
            let at_inf = p.eval_hom_int(d, &g.r, &g.t).is_negative();
            let at_x = match &e.image_floor {
                Some(n) => p.eval_hom_int(d, n, &BigInt::one()).is_positive(),
                None => p.coeff(d).is_positive(),
            };
            if !(at_inf && at_x) {
                continue;
            }
            pairs += 1;
            let img = p.slash(g, d)?;
            if !(img.coeff(d).is_negative() && img.eval_rational(x).is_positive()) {
                return Err(Error::AuditFailure(format!(
                    "degree {d}: ({p}, {g}) maps to {img}, outside the set at x = {x}"
                )));
            }
        }
    }
    Ok(QuarticAudit {
        seed: seed.clone(),
        samples,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qforms::{class_decomposition, Group};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn d5_half() {
        let scope = SumScope::Discriminant(5.into());
        for rep in [Representation::SimpleGamma, Representation::ReducedGammaPrime, Representation::SimpleGamma1] {
            let rep_ = bijection_audit(&scope, &r(1, 2), rep).unwrap();
            assert_eq!(rep_.expected, rep_.mapped);
            let rep0 = bijection_audit(&scope, &r(0, 1), rep).unwrap();
            assert_eq!(rep0.expected, vec![QForm::new(-1, -1, 1), QForm::new(-1, 1, 1)]);
        }
    }

    #[test]
    fn per_class() {
        for cls in class_decomposition(&BigInt::from(40), Group::Gamma1).unwrap() {
            let scope = SumScope::Class(cls);
            bijection_audit(&scope, &r(2, 5), Representation::SimpleGamma1).unwrap();
        }
    }

    #[test]
    fn quartic_samples() {
        let p = IntPoly::from_i64(&[-2, 0, 0, 0, 1]);
        let a = quartic_sample_audit(&p, 4, &r(1, 3), 300, 7).unwrap();
        assert!(a.pairs > 0 && !a.samples.is_empty());
        let bad = IntPoly::from_i64(&[-1, -1, 0, 1, 1]);
        assert!(matches!(quartic_sample_audit(&bad, 4, &r(1, 3), 10, 7), Err(Error::NotInFd(_))));
    }
}
