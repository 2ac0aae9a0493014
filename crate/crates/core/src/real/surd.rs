use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;
use crate::error::{Error, Result};

/// `a + b * sqrt(d)` with rational `a`, nonzero rational `b` and a radicand
/// `d > 1` that has been stripped of every square factor we could find.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// Splits `n > 0` as `f^2 * m` with `m` free of small square factors (and of
/// any square cofactor).
pub(crate) fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.clone();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    // trial division bound keeps this cheap on the radicands we meet
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= m && p <= limit {
        let pp = &p * &p;
        while (&m % &pp).is_zero() {
            m /= &pp;
            f *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() && is_square(&m) {
        let s = m.sqrt();
        f *= &s;
        m = BigInt::one();
    }
    (f, m)
}

/// Result of building a surd: either it genuinely involves a square root or
/// it collapsed to a rational.
pub enum SurdOrRational {
    Surd(QuadSurd),
    Rational(BigRational),
}

impl QuadSurd {
    /// Builds `a + b sqrt(d)`, normalizing the radicand. Fails when `d <= 0`.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<SurdOrRational> {
        if !d.is_positive() {
            return Err(Error::Domain(format!("non-positive radicand {d}")));
        }
        if b.is_zero() {
            return Ok(SurdOrRational::Rational(a));
        }
        let (f, m) = split_square(&d);
        let b = b * BigRational::from_integer(f);
        if m.is_one() {
            return Ok(SurdOrRational::Rational(a + b));
        }
        Ok(SurdOrRational::Surd(QuadSurd { a, b, d: m }))
    }

    /// Builds `(p + q sqrt(d)) / r`.
    pub fn from_parts(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Result<SurdOrRational> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(
            BigRational::new(p, r.clone()),
            BigRational::new(q, r),
            d,
        )
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    /// Canonical `(p, q, r, D)` with `r > 0` and `gcd(p, q, r) = 1`.
    pub fn parts(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let r = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * BigRational::from_integer(r.clone())).to_integer();
        let q = (&self.b * BigRational::from_integer(r.clone())).to_integer();
        let g = p.gcd(&q).gcd(&r);
        (&p / &g, &q / &g, &r / &g, self.d.clone())
    }

    pub fn conjugate(&self) -> QuadSurd {
        QuadSurd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// `x * conj(x)`, always rational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn neg(&self) -> QuadSurd {
        QuadSurd {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn same_field(&self, other: &QuadSurd) -> bool {
        self.d == other.d
    }

    fn build(a: BigRational, b: BigRational, d: &BigInt) -> SurdOrRational {
        if b.is_zero() {
            SurdOrRational::Rational(a)
        } else {
            SurdOrRational::Surd(QuadSurd { a, b, d: d.clone() })
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> QuadSurd {
        QuadSurd {
            a: &self.a + r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> SurdOrRational {
        Self::build(&self.a * r, &self.b * r, &self.d)
    }

    /// Same-field sum. Panics on mismatched radicands (callers check first).
    pub fn add(&self, other: &QuadSurd) -> SurdOrRational {
        assert!(self.same_field(other));
        Self::build(&self.a + &other.a, &self.b + &other.b, &self.d)
    }

    pub fn mul(&self, other: &QuadSurd) -> SurdOrRational {
        assert!(self.same_field(other));
        let d = BigRational::from_integer(self.d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * d;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::build(a, b, &self.d)
    }

    /// Never zero, so the reciprocal always exists.
    pub fn recip(&self) -> QuadSurd {
        let n = self.norm();
        QuadSurd {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d.clone(),
        }
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.signum();
        let sb = self.b.signum();
        let zero = BigRational::zero();
        let s = |v: &BigRational| v.cmp(&zero);
        if sa.is_zero() {
            return s(&sb);
        }
        if sa == sb {
            return s(&sa);
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        if a2 > b2d {
            s(&sa)
        } else {
            s(&sb)
        }
    }

    pub fn floor(&self) -> BigInt {
        let (p, q, r, d) = self.parts();
        let s = (&q * &q * &d).sqrt();
        // q sqrt(d) is irrational, so it lies strictly between s and s + 1
        let fl = if q.is_positive() { &p + &s } else { &p - &s - 1 };
        fl.div_floor(&r)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Interval enclosure at `prec` bits.
    pub fn to_interval(&self, prec: u32) -> Interval {
        let guard = prec as u64 + 16 + self.b.numer().bits() + self.b.denom().bits();
        let scaled: BigInt = &self.d << (2 * guard);
        let s = scaled.sqrt();
        let lo_root = Dyadic::new(s.clone(), -(guard as i64));
        let hi_root = Dyadic::new(s + 1, -(guard as i64));
        let work = prec + 64;
        let b = Interval::from_rational(&self.b, work);
        let root = Interval::new(lo_root, hi_root, work);
        let a = Interval::from_rational(&self.a, work);
        a.add(&b.mul(&root)).with_prec(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).midpoint_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        match QuadSurd::from_parts(p.into(), q.into(), r.into(), d.into()).unwrap() {
            SurdOrRational::Surd(s) => s,
            SurdOrRational::Rational(_) => panic!("expected surd"),
        }
    }

    #[test]
    fn floor_and_sign() {
        let x = surd(-3, -1, 2, 5);
        assert_eq!(x.floor(), BigInt::from(-3));
        assert_eq!(x.ceil(), BigInt::from(-2));
        assert_eq!(x.signum(), Ordering::Less);
        let g = surd(1, 1, 2, 5);
        assert_eq!(g.floor(), BigInt::one());
        assert_eq!(surd(-1, 1, 2, 5).signum(), Ordering::Greater);
    }

    #[test]
    fn radicand_normalization() {
        let x = surd(0, 1, 1, 20);
        assert_eq!(x.radicand(), &BigInt::from(5));
        assert_eq!(x.irrational_coeff(), &BigRational::from_integer(2.into()));
        assert!(matches!(
            QuadSurd::from_parts(1.into(), 1.into(), 1.into(), 16.into()).unwrap(),
            SurdOrRational::Rational(_)
        ));
    }

    #[test]
    fn reciprocal_rationalizes() {
        let x = surd(-3, -1, 2, 5);
        assert_eq!(x.recip(), surd(-3, 1, 2, 5));
        assert_eq!(x.parts(), (BigInt::from(-3), BigInt::from(-1), BigInt::from(2), BigInt::from(5)));
    }

    #[test]
    fn interval_encloses() {
        let x = surd(1, 1, 2, 5);
        let iv = x.to_interval(100);
        assert!((iv.midpoint_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        assert!(iv.width().to_f64() < 1e-28);
    }
}
