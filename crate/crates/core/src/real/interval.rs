use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};

/// A closed interval with dyadic endpoints, rounded outward to `prec`
/// significant bits after every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
            prec,
        }
    }

    /// Hull of two rationals, rounded outward.
    pub fn hull(a: &BigRational, b: &BigRational, prec: u32) -> Self {
        let (l, h) = if a <= b { (a, b) } else { (b, a) };
        Interval {
            lo: Dyadic::from_rational(l, prec, Round::Down),
            hi: Dyadic::from_rational(h, prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let m = self.lo.add(&self.hi);
        m.to_f64() / 2.0
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    /// Sign if certified; `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.signum() == Ordering::Greater {
            Some(Ordering::Greater)
        } else if self.hi.signum() == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        Interval::new(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi, prec)
    }

    pub fn recip(&self) -> Result<Self> {
        match self.sign() {
            Some(Ordering::Equal) => Err(Error::DivisionByZero),
            None => Err(Error::PrecisionLoss(
                "divisor interval contains zero".into(),
            )),
            Some(_) => {
                let one = Dyadic::from_int(&BigInt::one());
                Ok(Interval {
                    lo: one.div(&self.hi, self.prec, Round::Down),
                    hi: one.div(&self.lo, self.prec, Round::Up),
                    prec: self.prec,
                })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power by repeated multiplication; even powers of an interval
    /// straddling zero keep a zero lower bound.
    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Interval::from_rational(&BigRational::one(), self.prec);
        }
        if n % 2 == 0 && self.sign().is_none() {
            let m = self.lo.abs().max(self.hi.abs());
            let mut top = m.clone();
            for _ in 1..n {
                top = top.mul(&m).round(self.prec, Round::Up);
            }
            return Interval::new(Dyadic::zero(), top, self.prec);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Image of the interval under `y = (r x + s) / (t x + u)`, exact at the
    /// endpoints and rounded outward. The pole must lie outside.
    pub fn mobius(&self, r: &BigInt, s: &BigInt, t: &BigInt, u: &BigInt) -> Result<Self> {
        let den = |x: &BigRational| x * BigRational::from_integer(t.clone()) + BigRational::from_integer(u.clone());
        let num = |x: &BigRational| x * BigRational::from_integer(r.clone()) + BigRational::from_integer(s.clone());
        let lo = self.lo.to_rational();
        let hi = self.hi.to_rational();
        let dl = den(&lo);
        let dh = den(&hi);
        if dl.is_zero() && dh.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if dl.is_zero() || dh.is_zero() || dl.signum() != dh.signum() {
            return Err(Error::InsufficientPrecision(
                "Moebius pole inside the interval".into(),
            ));
        }
        Ok(Interval::hull(&(num(&lo) / dl), &(num(&hi) / dh), self.prec))
    }

    /// `a + b x` with integer coefficients, evaluated exactly at the endpoints.
    pub fn affine(&self, a: &BigInt, b: &BigInt) -> Self {
        let f = |x: &Dyadic| Dyadic::from_int(a).add(&Dyadic::from_int(b).mul(x));
        let l = f(&self.lo);
        let h = f(&self.hi);
        if l <= h {
            Interval::new(l, h, self.prec)
        } else {
            Interval::new(h, l, self.prec)
        }
    }

    pub fn floor(&self) -> Result<BigInt> {
        let a = self.lo.floor();
        let b = self.hi.floor();
        if a == b {
            Ok(a)
        } else {
            Err(Error::InsufficientPrecision(format!(
                "interval [{}, {}] straddles an integer",
                self.lo.to_f64(),
                self.hi.to_f64()
            )))
        }
    }

    pub fn ceil(&self) -> Result<BigInt> {
        let a = self.lo.ceil();
        let b = self.hi.ceil();
        if a == b {
            Ok(a)
        } else {
            Err(Error::InsufficientPrecision(format!(
                "interval [{}, {}] straddles an integer",
                self.lo.to_f64(),
                self.hi.to_f64()
            )))
        }
    }

    /// Exact upper bound on `|x|` as a rational.
    pub fn abs_upper(&self) -> BigRational {
        let l = self.lo.to_rational().abs();
        let h = self.hi.to_rational().abs();
        if l > h {
            l
        } else {
            h
        }
    }
}
