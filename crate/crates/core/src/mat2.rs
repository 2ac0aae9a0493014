//! 2x2 integer matrices viewed as elements of PGL2(Z).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// The matrix `[[r, s], [t, u]]`, acting on the line by `x -> (r x + s)/(t x + u)`.
///
/// Products and powers keep the raw entries. Use [`Mat2::normalized`] or
/// [`Mat2::pgl_eq`] when the matrix should be read as a projective class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
    pub u: BigInt,
}

impl Mat2 {
    pub fn new(r: impl Into<BigInt>, s: impl Into<BigInt>, t: impl Into<BigInt>, u: impl Into<BigInt>) -> Self {
        Mat2 {
            r: r.into(),
            s: s.into(),
            t: t.into(),
            u: u.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `x -> 1/x`
    pub fn epsilon() -> Self {
        Mat2::new(0, 1, 1, 0)
    }

    /// `x -> -x`
    pub fn sigma() -> Self {
        Mat2::new(-1, 0, 0, 1)
    }

    /// `x -> -1/x`
    pub fn s() -> Self {
        Mat2::new(0, -1, 1, 0)
    }

    /// `x -> x + 1`
    pub fn t() -> Self {
        Mat2::new(1, 1, 0, 1)
    }

    /// `T^n` for any integer `n`.
    pub fn t_pow(n: &BigInt) -> Self {
        Mat2::new(1, n.clone(), 0, 1)
    }

    /// `U = T S`, the order-three element `x -> 1 - 1/x`.
    pub fn u() -> Self {
        Mat2::t().mul(&Mat2::s())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.r, &self.s, &self.t, &self.u]
    }

    pub fn det(&self) -> BigInt {
        &self.r * &self.u - &self.s * &self.t
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            r: &self.r * &o.r + &self.s * &o.t,
            s: &self.r * &o.s + &self.s * &o.u,
            t: &self.t * &o.r + &self.u * &o.t,
            u: &self.t * &o.s + &self.u * &o.u,
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            r: -&self.r,
            s: -&self.s,
            t: -&self.t,
            u: -&self.u,
        }
    }

    /// Exact inverse; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "matrix {self} has determinant {d}, not invertible over Z"
            )));
        }
        Ok(Mat2 {
            r: &self.u * &d,
            s: -&self.s * &d,
            t: -&self.t * &d,
            u: &self.r * &d,
        })
    }

    pub fn pow(&self, n: u64) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Representative with first nonzero entry positive.
    pub fn normalized(&self) -> Mat2 {
        let first = self.entries().into_iter().find(|e| !e.is_zero());
        match first {
            Some(e) if e.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn pgl_eq(&self, other: &Mat2) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_identity_pgl(&self) -> bool {
        self.pgl_eq(&Mat2::identity())
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries().into_iter().map(|e| e.abs()).max().unwrap()
    }

    /// Image of the point at infinity, `r / t`; `None` when it is infinity.
    pub fn at_infinity(&self) -> Option<BigRational> {
        if self.t.is_zero() {
            None
        } else {
            Some(BigRational::new(self.r.clone(), self.t.clone()))
        }
    }

    /// Image of a rational point; `None` for infinity.
    pub fn apply_rational(&self, x: &BigRational) -> Option<BigRational> {
        let num = x * BigRational::from_integer(self.r.clone()) + BigRational::from_integer(self.s.clone());
        let den = x * BigRational::from_integer(self.t.clone()) + BigRational::from_integer(self.u.clone());
        if den.is_zero() {
            None
        } else {
            Some(num / den)
        }
    }

    /// Moebius image of `x`; `Ok(None)` is the point at infinity.
    pub fn apply(&self, x: &Real) -> Result<Option<Real>> {
        x.mobius(&self.r, &self.s, &self.t, &self.u)
    }

    /// Image of the column vector `(x, y)`.
    pub fn apply_vec(&self, x: &Real, y: &Real) -> (Real, Real) {
        let r = Real::from(self.r.clone());
        let s = Real::from(self.s.clone());
        let t = Real::from(self.t.clone());
        let u = Real::from(self.u.clone());
        (r.mul(x).add(&s.mul(y)), t.mul(x).add(&u.mul(y)))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.r, self.s, self.t, self.u)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [self.r.to_string(), self.s.to_string()],
            [self.t.to_string(), self.u.to_string()],
        ];
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = <[[String; 2]; 2]>::deserialize(deserializer)?;
        let p = |s: &str| s.parse::<BigInt>().map_err(|_| D::Error::custom(format!("bad integer {s:?}")));
        Ok(Mat2 {
            r: p(&rows[0][0])?,
            s: p(&rows[0][1])?,
            t: p(&rows[1][0])?,
            u: p(&rows[1][1])?,
        })
    }
}
