use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::SumScope;
use crate::error::{Error, Result};
use crate::qforms::{check_discriminant, reduce_to_simple, QForm};

/// Every form of discriminant `D` with `a < 0 < Q(x)`, for `x = p/q`.
///
/// Complete because `1/q^2 <= Q(x) <= D/(4|a|)`, so `|a| <= D q^2 / 4`, and
/// `x` lies strictly between the roots, so `|2|a|x - b| < sqrt D`.
fn all_members(d: i64, x: &BigRational) -> Result<Vec<QForm>> {
    check_discriminant(&BigInt::from(d))?;
    let too_big = || Error::InvalidArgument(format!("x = {x} has too large a height for direct enumeration"));
    let p = x.numer().to_i128().ok_or_else(too_big)?;
    let q = x.denom().to_i128().ok_or_else(too_big)?;
    let d = d as i128;
    let amax = d.checked_mul(q * q).ok_or_else(too_big)? / 4;
    let s = d.sqrt() + 1;
    let mut out = Vec::new();
    for big_a in 1..=amax {
        let a = -big_a;
        // 2|a|x = 2 big_a p / q
        let centre = (2 * big_a * p).div_euclid(q);
        for b in centre - s..=centre + s + 1 {
            let n = b * b - d;
            if n % (4 * a) != 0 {
                continue;
            }
            let c = n / (4 * a);
            if a * p * p + b * p * q + c * q * q > 0 {
                out.push(QForm::new(a as i64, b as i64, c as i64));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The finite set `Q_D<x>` restricted to the scope.
pub fn direct_members(scope: &SumScope, x: &BigRational) -> Result<Vec<QForm>> {
    let d = i64::try_from(&scope.discriminant())
        .map_err(|_| Error::InvalidArgument("discriminant too large".into()))?;
    let all = all_members(d, x)?;
    match scope {
        SumScope::Discriminant(_) => Ok(all),
        SumScope::Class(c) => {
            let simple: HashSet<&QForm> = c.simple_members().collect();
            let mut out = Vec::new();
            for q in all {
                if simple.contains(&reduce_to_simple(&q)?.0) {
                    out.push(q);
                }
            }
            Ok(out)
        }
    }
}

/// Exact `sum Q(x)^(k-1)` over the scope's part of `Q_D<x>`.
pub fn a_sum_direct(scope: &SumScope, k: u32, x: &BigRational) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    let members = direct_members(scope, x)?;
    Ok(members
        .iter()
        .map(|q| num_traits::pow(q.eval_rational(x), (k - 1) as usize))
        .fold(BigRational::zero(), |a, b| a + b))
}

/// `A_{k,D}(x)` for rational `x`, by finite enumeration.
pub fn a_sum_direct_rational(d: &BigInt, k: u32, x: &BigRational) -> Result<BigRational> {
    if d.is_negative() {
        return Err(Error::NonPositiveDiscriminant(d.clone()));
    }
    a_sum_direct(&SumScope::Discriminant(d.clone()), k, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn d5_examples() {
        let scope = SumScope::Discriminant(5.into());
        let m = direct_members(&scope, &r(0, 1)).unwrap();
        assert_eq!(m, vec![QForm::new(-1, -1, 1), QForm::new(-1, 1, 1)]);
        let five = BigInt::from(5);
        assert_eq!(a_sum_direct_rational(&five, 2, &r(0, 1)).unwrap(), r(2, 1));
        assert_eq!(a_sum_direct_rational(&five, 4, &r(0, 1)).unwrap(), r(2, 1));
        assert_eq!(a_sum_direct_rational(&five, 2, &r(1, 1)).unwrap(), r(2, 1));
        assert_eq!(a_sum_direct_rational(&five, 2, &r(-7, 3)).unwrap(), r(2, 1));
    }

    #[test]
    fn brute_force_agrees() {
        // independent search over a generous box
        let x = r(2, 5);
        for d in [5i64, 8, 12, 13, 17] {
            let mut brute = Vec::new();
            for a in -120i64..0 {
                for b in -200i64..=200 {
                    if (b * b - d) % (4 * a) == 0 {
                        let q = QForm::new(a, b, (b * b - d) / (4 * a));
                        if q.eval_rational(&x) > BigRational::zero() {
                            brute.push(q);
                        }
                    }
                }
            }
            brute.sort();
            assert_eq!(direct_members(&SumScope::Discriminant(d.into()), &x).unwrap(), brute, "D = {d}");
        }
    }
}
