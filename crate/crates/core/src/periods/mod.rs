//! Period polynomials `P_{k,A}`, `P_{k,D}`, `P_{k,B}`, the cocycle
//! conditions, the `P^Gamma` identities, and L-values at negative integers.

mod identities;
mod lfun;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::qforms::{check_discriminant, enumerate_forms, form_power_sum, FormClass, FormKind, Group, IntPoly};

pub use identities::{identity_audit, IdentityAudit, IdentityCheck, IdentityKind};
pub use lfun::{
    bernoulli_numbers, bernoulli_poly, fundamental_part, generalized_bernoulli, kronecker_chi, l_value, simple_a_sum,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodScope {
    /// `P_{k,A}` for a Gamma-class, or the plain Gamma_1-class sum.
    Class(FormClass),
    /// `P_{k,D}`, the sum over every simple form.
    Discriminant(BigInt),
    /// `P_{k,B} = sum_B Q^(k-1) + (-1)^k sum_{-B} Q^(k-1)` for a Gamma_1-class.
    Gamma1Symmetrized(FormClass),
}

impl PeriodScope {
    fn tag(&self) -> &'static str {
        match self {
            PeriodScope::Class(c) if c.group == Group::Gamma1 => "gamma1-class",
            PeriodScope::Class(_) => "gamma-class",
            PeriodScope::Discriminant(_) => "discriminant",
            PeriodScope::Gamma1Symmetrized(_) => "gamma1-symmetrized",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodPoly {
    pub poly: IntPoly,
    /// `2k`
    pub weight: u32,
    #[serde(serialize_with = "crate::ser::big")]
    pub discriminant: BigInt,
    pub scope: &'static str,
}

impl PeriodPoly {
    /// Weight of the slash action on the polynomial itself, `2k - 2`.
    pub fn slash_degree(&self) -> usize {
        self.weight as usize - 2
    }
}

/// `P_{k,A}(X) = sum_{Q in A^Sim} Q(X)^(k-1)` and its variants.
pub fn period_polynomial(scope: &PeriodScope, k: u32) -> Result<PeriodPoly> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    let odd = k % 2 == 1;
    let (poly, discriminant) = match scope {
        PeriodScope::Discriminant(d) => {
            check_discriminant(d)?;
            if odd {
                return Err(Error::OddWeightForGammaScope(k));
            }
            let d64 = i64::try_from(d).map_err(|_| Error::InvalidArgument(format!("discriminant {d} too large")))?;
            (form_power_sum(&enumerate_forms(d64, FormKind::Simple)?, k), d.clone())
        }
        PeriodScope::Class(c) => {
            if odd && c.group == Group::Gamma {
                return Err(Error::OddWeightForGammaScope(k));
            }
            (form_power_sum(c.simple_members(), k), c.discriminant())
        }
        PeriodScope::Gamma1Symmetrized(c) => {
            if c.group != Group::Gamma1 {
                return Err(Error::InvalidArgument("symmetrized scope needs a Gamma_1-class".into()));
            }
            let own = form_power_sum(c.simple_members(), k);
            let neg = form_power_sum(c.negated()?.simple_members(), k);
            (if odd { own.sub(&neg) } else { own.add(&neg) }, c.discriminant())
        }
    };
    Ok(PeriodPoly {
        poly,
        weight: 2 * k,
        discriminant,
        scope: scope.tag(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub pass: bool,
    /// `P|(1+S)`
    pub residual_s: IntPoly,
    /// `P|(1+U+U^2)`
    pub residual_u: IntPoly,
}

/// Checks `P|(1+S) = 0` and `P|(1+U+U^2) = 0` in weight `d`.
pub fn cocycle_check(p: &IntPoly, d: usize) -> Result<CocycleReport> {
    let u = Mat2::u();
    let residual_s = p.add(&p.slash(&Mat2::s(), d)?);
    let residual_u = p.add(&p.slash(&u, d)?).add(&p.slash(&u.mul(&u), d)?);
    Ok(CocycleReport {
        pass: residual_s.is_zero() && residual_u.is_zero(),
        residual_s,
        residual_u,
    })
}

/// `(P+, P-)` with `P+` even and `P-` odd.
pub fn even_odd_split(p: &IntPoly) -> (IntPoly, IntPoly) {
    let mut even = p.coeffs().to_vec();
    let mut odd = even.clone();
    for (j, c) in even.iter_mut().enumerate() {
        if j % 2 == 1 {
            *c = BigInt::from(0);
        }
    }
    for (j, c) in odd.iter_mut().enumerate() {
        if j % 2 == 0 {
            *c = BigInt::from(0);
        }
    }
    (IntPoly::new(even), IntPoly::new(odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qforms::class_decomposition;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn d5_polynomials() {
        let d = PeriodScope::Discriminant(5.into());
        assert_eq!(period_polynomial(&d, 2).unwrap().poly, poly(&[-2, 0, 2]));
        assert_eq!(period_polynomial(&d, 4).unwrap().poly, poly(&[-2, 0, 0, 0, 0, 0, 2]));
        assert!(matches!(period_polynomial(&d, 3), Err(Error::OddWeightForGammaScope(3))));
        assert!(matches!(
            period_polynomial(&PeriodScope::Discriminant(9.into()), 2),
            Err(Error::SquareDiscriminant(_))
        ));
        let b = class_decomposition(&5.into(), Group::Gamma1).unwrap().remove(0);
        let sym = period_polynomial(&PeriodScope::Gamma1Symmetrized(b), 2).unwrap();
        assert_eq!(sym.poly, poly(&[-4, 0, 4]));
        assert_eq!(sym.weight, 4);
    }

    #[test]
    fn cocycles() {
        assert!(cocycle_check(&poly(&[-2, 0, 2]), 2).unwrap().pass);
        assert!(cocycle_check(&poly(&[-1, 0, 1]), 2).unwrap().pass);
        let r = cocycle_check(&poly(&[0, 0, 1]), 2).unwrap();
        assert!(!r.pass);
        assert_eq!(r.residual_s, poly(&[1, 0, 1]));
    }

    #[test]
    fn split() {
        assert_eq!(even_odd_split(&poly(&[0, 0, 1, 1])), (poly(&[0, 0, 1]), poly(&[0, 0, 0, 1])));
        assert_eq!(even_odd_split(&poly(&[-2, 0, 2])), (poly(&[-2, 0, 2]), IntPoly::zero()));
    }
}
