//! Binary floating-point numbers `mant * 2^exp` with arbitrary-size mantissa.
//!
//! Only the operations needed by interval arithmetic are provided. Every
//! operation that can lose information takes an explicit rounding direction.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self::new(n.clone(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        match self.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let (q, r) = self.mant.div_mod_floor(&pow2(shift));
        let q = if dir == Round::Up && !r.is_zero() { q + 1 } else { q };
        Self::new(q, self.exp + shift as i64)
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            self.mant.div_floor(&pow2((-self.exp) as u64))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Rounds a rational to `prec` significant bits in the given direction.
    pub fn from_rational(r: &BigRational, prec: u32, dir: Round) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let num = r.numer();
        let den = r.denom();
        // choose s with |num * 2^s / den| >= 2^(prec+1)
        let s = prec as i64 + 2 - (num.bits() as i64 - den.bits() as i64);
        let (n, d) = if s >= 0 {
            (num << s as u64, den.clone())
        } else {
            (num.clone(), den << (-s) as u64)
        };
        let (q, rem) = n.div_mod_floor(&d);
        let q = if dir == Round::Up && !rem.is_zero() { q + 1 } else { q };
        Self::new(q, -s).round(prec, dir)
    }

    /// `self / other` rounded to `prec` bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        let r = self.to_rational() / other.to_rational();
        Self::from_rational(&r, prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // keep 64 leading bits then scale
        let bits = self.bits() as i64;
        let shift = (bits - 64).max(0);
        let m: BigInt = &self.mant >> shift as u64;
        let mf: f64 = m.to_string().parse().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > i32::MAX as i64 {
            return if mf > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < i32::MIN as i64 {
            return 0.0;
        }
        mf * 2f64.powi(e as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Ordering::Equal {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes via bit length first
        let la = self.bits() as i64 + self.exp;
        let lb = other.bits() as i64 + other.exp;
        let mag = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.abs() << (self.exp - e) as u64;
            let b = other.mant.abs() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa == Ordering::Greater {
            mag
        } else {
            mag.reverse()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rounding_brackets_the_rational() {
        for (n, d) in [(1, 3), (-7, 5), (22, 7), (-1, 1_000_003)] {
            let r = q(n, d);
            let lo = Dyadic::from_rational(&r, 40, Round::Down);
            let hi = Dyadic::from_rational(&r, 40, Round::Up);
            assert!(lo.to_rational() <= r && r <= hi.to_rational());
            assert!(lo.bits() <= 40 && hi.bits() <= 40);
            let width = hi.to_rational() - lo.to_rational();
            assert!(width <= r.abs() * q(1, 1 << 38));
        }
    }

    #[test]
    fn ordering_and_floor() {
        let a = Dyadic::new(BigInt::from(5), -1); // 2.5
        let b = Dyadic::new(BigInt::from(-5), -1);
        assert!(b < a);
        assert_eq!(a.floor(), BigInt::from(2));
        assert_eq!(b.floor(), BigInt::from(-3));
        assert_eq!(b.ceil(), BigInt::from(-2));
        assert_eq!(Dyadic::new(BigInt::from(12), 0).exponent(), 2);
        assert!((a.to_f64() - 2.5).abs() < 1e-15);
    }
}
