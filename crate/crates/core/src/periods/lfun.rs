//! Kronecker characters and Dirichlet L-values at negative integers,
//! through generalized Bernoulli numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qforms::{check_discriminant, enumerate_forms, FormKind};

fn check_disc(d: i64) -> Result<()> {
    if d <= 0 || d.rem_euclid(4) > 1 || check_discriminant(&BigInt::from(d)).is_err() {
        return Err(Error::InvalidDiscriminant(d.into()));
    }
    Ok(())
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
fn jacobi(a: i64, n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(D/n)` without the discriminant check.
fn kronecker(d: i64, n: u64) -> i32 {
    let mut n = n as i64;
    let mut out = 1;
    while n % 2 == 0 {
        n /= 2;
        out *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    out * jacobi(d, n)
}

/// `chi_D(n) = (D/n)` for a positive non-square discriminant `D` and `n >= 1`.
pub fn kronecker_chi(d: i64, n: u64) -> Result<i32> {
    check_disc(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(kronecker(d, n))
}

/// `D = D0 f^2` with `D0` a fundamental discriminant.
pub fn fundamental_part(d: i64) -> Result<(i64, i64)> {
    check_disc(d)?;
    let mut s = d;
    let mut f = 1i64;
    let mut p = 2i64;
    while p * p <= s {
        while s % (p * p) == 0 {
            s /= p * p;
            f *= p;
        }
        p += 1;
    }
    if s % 4 == 1 {
        Ok((s, f))
    } else {
        // d = 4 s' f'^2 with s' = 2, 3 mod 4: one factor 2 goes back
        Ok((4 * s, f / 2))
    }
}

/// `B_0, ..., B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        // sum_{j<=m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut c = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * &c;
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / c);
    }
    b
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 0..n {
        let next = &row[j] * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

/// `B_n(t)`.
pub fn bernoulli_poly(n: usize, t: &BigRational, b: &[BigRational]) -> BigRational {
    let c = binomials(n);
    (0..=n)
        .map(|j| &b[j] * BigRational::from_integer(c[j].clone()) * num_traits::pow(t.clone(), n - j))
        .fold(BigRational::zero(), |a, x| a + x)
}

/// `B_{n,chi} = f^(n-1) sum_{r=1}^{f} chi(r) B_n(r/f)` for the character of
/// the fundamental discriminant `f`.
pub fn generalized_bernoulli(d0: i64, n: usize) -> BigRational {
    let b = bernoulli_numbers(n);
    let mut acc = BigRational::zero();
    for r in 1..=d0 {
        let chi = kronecker(d0, r as u64);
        if chi == 0 {
            continue;
        }
        let t = BigRational::new(r.into(), d0.into());
        let v = bernoulli_poly(n, &t, &b);
        if chi > 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc * num_traits::pow(BigRational::from_integer(d0.into()), n - 1)
}

fn mobius(mut n: i64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        -m
    } else {
        m
    }
}

fn sigma(n: i64, k: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

/// `L_D(s)` at `s = 1 - n` for even `n >= 2`: `L(1-n, chi_D0)` times
/// `sum_{d | f} mu(d) chi_D0(d) d^(n-1) sigma_{2n-1}(f/d)` where `D = D0 f^2`.
/// For fundamental `D` this is the Dirichlet L-value itself.
pub fn l_value(d: i64, s: i64) -> Result<BigRational> {
    check_disc(d)?;
    if s > -1 || s.rem_euclid(2) != 1 {
        return Err(Error::InvalidArgument(format!("s = {s} must be a negative odd integer")));
    }
    let n = (1 - s) as usize;
    let (d0, f) = fundamental_part(d)?;
    let l0 = -generalized_bernoulli(d0, n) / BigRational::from_integer(BigInt::from(n));
    let mut corr = BigInt::zero();
    for dd in (1..=f).filter(|x| f % x == 0) {
        let mu = mobius(dd);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d0, dd as u64);
        corr += BigInt::from(mu * chi as i64) * BigInt::from(dd).pow(n as u32 - 1) * sigma(f / dd, 2 * n as u32 - 1);
    }
    Ok(l0 * BigRational::from_integer(corr))
}

/// Sum of the leading coefficients of all simple forms of discriminant `D`.
pub fn simple_a_sum(d: i64) -> Result<BigInt> {
    Ok(enumerate_forms(d, FormKind::Simple)?.iter().map(|q| q.a.clone()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn characters() {
        assert_eq!(kronecker_chi(5, 2).unwrap(), -1);
        assert_eq!(kronecker_chi(5, 4).unwrap(), 1);
        assert_eq!(kronecker_chi(8, 3).unwrap(), -1);
        assert_eq!(kronecker_chi(8, 7).unwrap(), 1);
        assert_eq!(kronecker_chi(12, 6).unwrap(), 0);
        assert!(matches!(kronecker_chi(7, 1), Err(Error::InvalidDiscriminant(_))));
        assert!(matches!(kronecker_chi(9, 1), Err(Error::InvalidDiscriminant(_))));
    }

    #[test]
    fn bernoulli() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
    }

    #[test]
    fn l_values() {
        assert_eq!(l_value(5, -1).unwrap(), r(-2, 5));
        assert_eq!(l_value(5, -3).unwrap(), r(2, 1));
        assert_eq!(l_value(8, -1).unwrap(), r(-1, 1));
        assert_eq!(fundamental_part(20).unwrap(), (5, 2));
        assert_eq!(fundamental_part(12).unwrap(), (12, 1));
        assert_eq!(fundamental_part(32).unwrap(), (8, 2));
        assert!(l_value(5, -2).is_err());
    }

    #[test]
    fn simple_sums() {
        assert_eq!(simple_a_sum(5).unwrap(), 2.into());
        assert_eq!(simple_a_sum(8).unwrap(), 5.into());
        let l = l_value(13, -1).unwrap();
        assert_eq!(BigRational::from_integer(simple_a_sum(13).unwrap()), -l * r(5, 1));
    }
}
