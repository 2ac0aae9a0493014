//! Exact and certified real scalars.
//!
//! A [`Real`] is a rational, a quadratic surd, or a dyadic interval. Exact
//! variants stay exact under the field operations; anything touching an
//! interval becomes an interval with outward rounding. Sign and floor queries
//! on intervals either succeed with a certified answer or fail with
//! [`Error::InsufficientPrecision`]; nothing is ever guessed.

mod consts;
mod dyadic;
mod interval;
mod parse;
mod surd;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use parse::{parse_real, parse_real_with_precision};
pub use surd::QuadSurd;

use crate::error::{Error, Result};
use surd::SurdOrRational;

/// Working precision used when exact values have to be demoted to intervals
/// and no interval operand supplies one.
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealKind {
    Rational,
    Surd,
    Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegerPart {
    Floor,
    Ceil,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Rational(BigRational),
    Surd(QuadSurd),
    Interval(Interval),
}

impl From<SurdOrRational> for Real {
    fn from(v: SurdOrRational) -> Self {
        match v {
            SurdOrRational::Surd(s) => Real::Surd(s),
            SurdOrRational::Rational(r) => Real::Rational(r),
        }
    }
}

impl From<BigRational> for Real {
    fn from(r: BigRational) -> Self {
        Real::Rational(r)
    }
}

impl From<BigInt> for Real {
    fn from(n: BigInt) -> Self {
        Real::Rational(BigRational::from_integer(n))
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::from(BigInt::from(n))
    }
}

impl From<Interval> for Real {
    fn from(iv: Interval) -> Self {
        Real::Interval(iv)
    }
}

impl Real {
    pub fn zero() -> Self {
        Real::from(0)
    }

    pub fn one() -> Self {
        Real::from(1)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Real::Rational(BigRational::new(num.into(), den.into()))
    }

    /// `(p + q sqrt(d)) / r`; collapses to a rational when the root is exact.
    pub fn surd(p: i64, q: i64, r: i64, d: i64) -> Result<Self> {
        Ok(QuadSurd::from_parts(p.into(), q.into(), r.into(), d.into())?.into())
    }

    pub fn pi(prec: u32) -> Self {
        Real::Interval(consts::pi(prec))
    }

    pub fn e(prec: u32) -> Self {
        Real::Interval(consts::e(prec))
    }

    pub fn kind(&self) -> RealKind {
        match self {
            Real::Rational(_) => RealKind::Rational,
            Real::Surd(_) => RealKind::Surd,
            Real::Interval(_) => RealKind::Interval,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Real::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadSurd> {
        match self {
            Real::Surd(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Real::Interval(_))
    }

    /// True only for values known exactly to be integers.
    pub fn is_integer(&self) -> bool {
        match self {
            Real::Rational(r) => r.is_integer(),
            Real::Surd(_) => false,
            Real::Interval(iv) => iv.lo() == iv.hi() && iv.lo().is_integer(),
        }
    }

    /// True only for an exact zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Real::Rational(r) => r.is_zero(),
            Real::Surd(_) => false,
            Real::Interval(iv) => iv.lo().is_zero() && iv.hi().is_zero(),
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Real::Interval(iv) => Some(iv.prec()),
            _ => None,
        }
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        match self {
            Real::Rational(r) => Interval::from_rational(r, prec),
            Real::Surd(s) => s.to_interval(prec),
            Real::Interval(iv) => iv.clone(),
        }
    }

    /// Demotes exact values to an interval at `prec` bits; intervals are
    /// returned unchanged.
    pub fn into_interval(self, prec: u32) -> Real {
        match self {
            Real::Interval(_) => self,
            other => Real::Interval(other.to_interval(prec)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(r) => rational_to_f64(r),
            Real::Surd(s) => s.to_f64(),
            Real::Interval(iv) => iv.midpoint_f64(),
        }
    }

    /// Decimal rendering with `digits` places; intervals print their midpoint.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Real::Rational(r) => format_decimal(r, digits),
            _ => {
                let bits = (digits as u32) * 4 + 64;
                let iv = self.to_interval(bits);
                let mid = (iv.lo().to_rational() + iv.hi().to_rational()) / BigRational::from_integer(2.into());
                format_decimal(&mid, digits)
            }
        }
    }

    /// Exact rational upper bound on `|self|`.
    pub fn abs_upper(&self) -> BigRational {
        match self {
            Real::Rational(r) => r.abs(),
            Real::Surd(s) => s.to_interval(64).abs_upper(),
            Real::Interval(iv) => iv.abs_upper(),
        }
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Rational(r) => Real::Rational(-r),
            Real::Surd(s) => Real::Surd(s.neg()),
            Real::Interval(iv) => Real::Interval(iv.neg()),
        }
    }

    fn interval_prec(a: &Real, b: &Real) -> u32 {
        match (a.precision(), b.precision()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => DEFAULT_PRECISION,
        }
    }

    pub fn add(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Rational(a), Real::Rational(b)) => Real::Rational(a + b),
            (Real::Surd(s), Real::Rational(r)) | (Real::Rational(r), Real::Surd(s)) => {
                Real::Surd(s.add_rational(r))
            }
            (Real::Surd(a), Real::Surd(b)) if a.same_field(b) => a.add(b).into(),
            _ => {
                let p = Self::interval_prec(self, other);
                Real::Interval(self.to_interval(p).add(&other.to_interval(p)))
            }
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Rational(a), Real::Rational(b)) => Real::Rational(a * b),
            (Real::Surd(s), Real::Rational(r)) | (Real::Rational(r), Real::Surd(s)) => {
                s.mul_rational(r).into()
            }
            (Real::Surd(a), Real::Surd(b)) if a.same_field(b) => a.mul(b).into(),
            _ => {
                let p = Self::interval_prec(self, other);
                Real::Interval(self.to_interval(p).mul(&other.to_interval(p)))
            }
        }
    }

    pub fn recip(&self) -> Result<Real> {
        match self {
            Real::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Real::Rational(r.recip()))
                }
            }
            Real::Surd(s) => Ok(Real::Surd(s.recip())),
            Real::Interval(iv) => Ok(Real::Interval(iv.recip()?)),
        }
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, n: u32) -> Real {
        match self {
            Real::Interval(iv) => Real::Interval(iv.powi(n)),
            _ => {
                let mut acc = Real::one();
                for _ in 0..n {
                    acc = acc.mul(self);
                }
                acc
            }
        }
    }

    pub fn conjugate(&self) -> Option<Real> {
        self.as_surd().map(|s| Real::Surd(s.conjugate()))
    }

    /// Certified sign.
    pub fn sign(&self) -> Result<Ordering> {
        match self {
            Real::Rational(r) => Ok(r.cmp(&BigRational::zero())),
            Real::Surd(s) => Ok(s.signum()),
            Real::Interval(iv) => iv.sign().ok_or_else(|| {
                Error::InsufficientPrecision("sign of an interval straddling zero".into())
            }),
        }
    }

    pub fn cmp_real(&self, other: &Real) -> Result<Ordering> {
        self.sub(other).sign()
    }

    pub fn floor(&self) -> Result<BigInt> {
        match self {
            Real::Rational(r) => Ok(r.numer().div_floor(r.denom())),
            Real::Surd(s) => Ok(s.floor()),
            Real::Interval(iv) => iv.floor(),
        }
    }

    pub fn ceil(&self) -> Result<BigInt> {
        match self {
            Real::Rational(r) => Ok(-(-r.numer()).div_floor(r.denom())),
            Real::Surd(s) => Ok(s.ceil()),
            Real::Interval(iv) => iv.ceil(),
        }
    }

    pub fn integer_part(&self, mode: IntegerPart) -> Result<BigInt> {
        match mode {
            IntegerPart::Floor => self.floor(),
            IntegerPart::Ceil => self.ceil(),
        }
    }

    /// `a + b * self` with integer coefficients.
    pub fn affine(&self, a: &BigInt, b: &BigInt) -> Real {
        match self {
            Real::Interval(iv) => Real::Interval(iv.affine(a, b)),
            _ => Real::from(a.clone()).add(&self.mul(&Real::from(b.clone()))),
        }
    }

    /// `(r x + s) / (t x + u)`; `Ok(None)` stands for the point at infinity.
    pub fn mobius(&self, r: &BigInt, s: &BigInt, t: &BigInt, u: &BigInt) -> Result<Option<Real>> {
        match self {
            Real::Interval(iv) => {
                if t.is_zero() {
                    if u.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                } else {
                    // pole at -u/t: check exactly whether the interval contains it
                    let pole = BigRational::new(-u.clone(), t.clone());
                    if iv.lo() == iv.hi() && iv.lo().to_rational() == pole {
                        return Ok(None);
                    }
                }
                Ok(Some(Real::Interval(iv.mobius(r, s, t, u)?)))
            }
            _ => {
                let den = self.affine(u, t);
                if den.is_zero() {
                    return Ok(None);
                }
                Ok(Some(self.affine(s, r).div(&den)?))
            }
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    Dyadic::from_rational(r, 64, Round::Down).to_f64()
}

/// Decimal rendering of a rational with `digits` places after the point.
pub fn format_decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    // round half away from zero
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = if scaled.is_negative() {
        -((-scaled) + half).floor().to_integer()
    } else {
        (scaled + half).floor().to_integer()
    };
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => write!(f, "{r}"),
            Real::Surd(s) => {
                let (p, q, r, d) = s.parts();
                let root = if q.abs().is_one() {
                    format!("sqrt({d})")
                } else {
                    format!("{}*sqrt({d})", q.abs())
                };
                let body = match (p.is_zero(), q.is_negative()) {
                    (true, false) => root,
                    (true, true) => format!("-{root}"),
                    (false, false) => format!("{p}+{root}"),
                    (false, true) => format!("{p}-{root}"),
                };
                if r.is_one() {
                    write!(f, "{body}")
                } else {
                    write!(f, "({body})/{r}")
                }
            }
            Real::Interval(iv) => write!(
                f,
                "[{:e}, {:e}]",
                iv.lo().to_f64(),
                iv.hi().to_f64()
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RealRepr {
    Rational {
        num: String,
        den: String,
    },
    Surd {
        p: String,
        q: String,
        r: String,
        #[serde(rename = "D")]
        d: String,
    },
    Interval {
        lo: String,
        hi: String,
        prec: u32,
    },
}

fn dyadic_string(d: &Dyadic) -> String {
    let r = d.to_rational();
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_dyadic(s: &str) -> std::result::Result<Dyadic, String> {
    let bad = || format!("bad dyadic bound {s:?}");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d <= BigInt::zero() {
        return Err(bad());
    }
    let tz = d.trailing_zeros().unwrap_or(0);
    if (&d >> tz) != BigInt::one() {
        return Err(bad());
    }
    Ok(Dyadic::new(n, -(tz as i64)))
}

impl Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Real::Rational(r) => RealRepr::Rational {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            },
            Real::Surd(s) => {
                let (p, q, r, d) = s.parts();
                RealRepr::Surd {
                    p: p.to_string(),
                    q: q.to_string(),
                    r: r.to_string(),
                    d: d.to_string(),
                }
            }
            Real::Interval(iv) => RealRepr::Interval {
                lo: dyadic_string(iv.lo()),
                hi: dyadic_string(iv.hi()),
                prec: iv.prec(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let int = |s: &str| s.parse::<BigInt>().map_err(|_| D::Error::custom(format!("bad integer {s:?}")));
        match RealRepr::deserialize(deserializer)? {
            RealRepr::Rational { num, den } => {
                let den = int(&den)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Real::Rational(BigRational::new(int(&num)?, den)))
            }
            RealRepr::Surd { p, q, r, d } => {
                QuadSurd::from_parts(int(&p)?, int(&q)?, int(&r)?, int(&d)?)
                    .map(Real::from)
                    .map_err(D::Error::custom)
            }
            RealRepr::Interval { lo, hi, prec } => {
                let lo = parse_dyadic(&lo).map_err(D::Error::custom)?;
                let hi = parse_dyadic(&hi).map_err(D::Error::custom)?;
                if lo > hi {
                    return Err(D::Error::custom("interval bounds out of order"));
                }
                Ok(Real::Interval(Interval::new(lo, hi, prec)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let x = Real::ratio(7, 3);
        assert_eq!(x.sub(&Real::from(2)), Real::ratio(1, 3));
        assert_eq!(x.floor().unwrap(), BigInt::from(2));
        assert_eq!(x.ceil().unwrap(), BigInt::from(3));
    }

    #[test]
    fn surd_reciprocal_example() {
        let x = Real::surd(-3, -1, 2, 5).unwrap();
        assert_eq!(x.recip().unwrap(), Real::surd(-3, 1, 2, 5).unwrap());
        assert_eq!(x.floor().unwrap(), BigInt::from(-3));
    }

    #[test]
    fn interval_floor_straddle_is_an_error() {
        let iv = Interval::hull(
            &BigRational::new(1999.into(), 1000.into()),
            &BigRational::new(2001.into(), 1000.into()),
            64,
        );
        let err = Real::Interval(iv).floor().unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision(_)));
    }

    #[test]
    fn mixed_radicands_become_intervals() {
        let a = Real::surd(0, 1, 1, 2).unwrap();
        let b = Real::surd(0, 1, 1, 3).unwrap();
        let s = a.add(&b);
        assert_eq!(s.kind(), RealKind::Interval);
        assert!((s.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
        // same radicand stays exact
        let c = a.mul(&a);
        assert_eq!(c, Real::from(2));
    }

    #[test]
    fn inv_pi_times_three() {
        let x = Real::pi(128).recip().unwrap().mul(&Real::from(3));
        let iv = x.to_interval(128);
        assert!(iv.lo().to_f64() >= 0.954929 && iv.hi().to_f64() <= 0.954930);
    }

    #[test]
    fn mobius_infinity() {
        let x = Real::ratio(1, 3);
        let r = x.mobius(&1.into(), &0.into(), &(-3).into(), &1.into()).unwrap();
        assert!(r.is_none());
        let r = x.mobius(&0.into(), &1.into(), &1.into(), &0.into()).unwrap();
        assert_eq!(r, Some(Real::from(3)));
    }

    #[test]
    fn json_forms() {
        let x = Real::ratio(7, 3);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"kind":"rational","num":"7","den":"3"}"#
        );
        let s = Real::surd(-3, -1, 2, 5).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"kind":"surd","p":"-3","q":"-1","r":"2","D":"5"}"#
        );
        let p = Real::pi(64);
        let back: Real = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn decimal_format() {
        let r = BigRational::new(2.into(), 3.into());
        assert_eq!(format_decimal(&r, 4), "0.6667");
        assert_eq!(format_decimal(&-r, 2), "-0.67");
        assert_eq!(format_decimal(&BigRational::from_integer(2.into()), 3), "2.000");
    }
}
