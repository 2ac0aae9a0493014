//! Certified enclosures of pi and e by fixed-point series with explicit
//! error accounting.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;

/// `sum_k (-1)^k / ((2k+1) n^(2k+1))` scaled by `2^w`, plus an error bound in
/// units of `2^-w`.
fn atan_inv(n: u32, w: u64) -> (BigInt, BigInt) {
    let one: BigInt = BigInt::one() << w;
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = &one / &n; // 2^w / n^(2k+1), truncated
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
        terms += 1;
    }
    // each term carries < 2 ulp of truncation, the dropped tail < 1 ulp
    (sum, BigInt::from(2 * terms + 2))
}

pub fn pi(prec: u32) -> Interval {
    let w = prec as u64 + 32;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let approx = a * 16 - b * 4;
    let err = ea * 16 + eb * 4;
    let lo = Dyadic::new(&approx - &err, -(w as i64));
    let hi = Dyadic::new(&approx + &err, -(w as i64));
    Interval::new(lo, hi, prec)
}

pub fn e(prec: u32) -> Interval {
    let w = prec as u64 + 32;
    let mut term: BigInt = BigInt::one() << w;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        sum += &term;
        k += 1;
        term /= BigInt::from(k);
    }
    let err = BigInt::from(k + 2);
    let lo = Dyadic::new(&sum - &err, -(w as i64));
    let hi = Dyadic::new(&sum + &err, -(w as i64));
    Interval::new(lo, hi, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn pi_contains_known_digits() {
        let p = pi(200);
        // 31415926535897932384626433832795028841971693993751 / 10^49
        let digits: BigInt = "31415926535897932384626433832795028841971693993751"
            .parse()
            .unwrap();
        let ten49 = BigInt::from(10).pow(49);
        let lo = BigRational::new(digits.clone(), ten49.clone());
        let hi = BigRational::new(digits + 1, ten49);
        assert!(p.lo().to_rational() < hi && p.hi().to_rational() > lo);
        assert!(p.width().to_f64() < 1e-58);
    }

    #[test]
    fn e_contains_known_digits() {
        let x = e(128);
        let digits: BigInt = "2718281828459045235360287471352662497757".parse().unwrap();
        let ten39 = BigInt::from(10).pow(39);
        assert!(x.contains_rational(&BigRational::new(digits.clone(), ten39.clone()))
            || x.lo().to_rational() < BigRational::new(digits + 1, ten39));
        assert!((x.midpoint_f64() - std::f64::consts::E).abs() < 1e-15);
    }
}
