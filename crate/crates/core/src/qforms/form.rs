use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::real::{QuadSurd, Real};
use crate::ser::{from_json_number, json_number};

/// The binary quadratic form `a X^2 + b XY + c Y^2`, identified with the
/// polynomial `a X^2 + b X + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

pub(crate) fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = n.sqrt();
        &s * &s == *n
    }
}

/// Rejects discriminants outside the scope of the library.
pub fn check_discriminant(d: &BigInt) -> Result<()> {
    if !d.is_positive() {
        return Err(Error::NonPositiveDiscriminant(d.clone()));
    }
    if is_square(d) {
        return Err(Error::SquareDiscriminant(d.clone()));
    }
    Ok(())
}

impl QForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - 4 * &self.a * &self.c
    }

    /// `Q|g (X, Y) = Q(rX + sY, tX + uY)`.
    pub fn act(&self, g: &Mat2) -> QForm {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (r, s, t, u) = (&g.r, &g.s, &g.t, &g.u);
        QForm {
            a: a * r * r + b * r * t + c * t * t,
            b: 2 * a * r * s + b * (r * u + s * t) + 2 * c * t * u,
            c: a * s * s + b * s * u + c * u * u,
        }
    }

    pub fn neg(&self) -> QForm {
        QForm {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }

    /// `Q(-X, Y) = [a, -b, c]`.
    pub fn sigma_conj(&self) -> QForm {
        QForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.a.is_positive() && self.c.is_negative()
    }

    pub fn is_reduced(&self) -> bool {
        self.a.is_positive() && self.c.is_positive() && self.b > &self.a + &self.c
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    /// `Q(x, 1)`.
    pub fn eval(&self, x: &Real) -> Real {
        self.eval_hom(x, &Real::one())
    }

    /// `Q(x, y)`.
    pub fn eval_hom(&self, x: &Real, y: &Real) -> Real {
        let a = Real::from(self.a.clone());
        let b = Real::from(self.b.clone());
        let c = Real::from(self.c.clone());
        a.mul(&x.mul(x)).add(&b.mul(&x.mul(y))).add(&c.mul(&y.mul(y)))
    }

    /// Exact `Q(x, y)` at integers.
    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let c = BigRational::from_integer(self.c.clone());
        a * x * x + b * x + c
    }

    /// Sign of `Q` at a point of the projective line (`None` is infinity).
    pub fn sign_at(&self, x: Option<&BigRational>) -> Ordering {
        match x {
            None => self.a.cmp(&BigInt::zero()),
            Some(x) => self.eval_rational(x).cmp(&BigRational::zero()),
        }
    }

    /// `(w_Q, w'_Q) = ((-b - sqrt D)/2a, (-b + sqrt D)/2a)`, exact.
    ///
    /// With this labelling `sign(a) w < sign(a) w'`.
    pub fn roots(&self) -> Result<(Real, Real)> {
        let d = self.disc();
        check_discriminant(&d)?;
        let two_a: BigInt = 2 * &self.a;
        let w = QuadSurd::from_parts(-&self.b, BigInt::from(-1), two_a.clone(), d.clone())?;
        let w2 = QuadSurd::from_parts(-&self.b, BigInt::from(1), two_a, d)?;
        Ok((w.into(), w2.into()))
    }

    /// `-w_Q = (b + sqrt D)/2a`, the point whose expansions drive the cycles.
    pub fn minus_w(&self) -> Result<Real> {
        Ok(self.roots()?.0.neg())
    }

    /// Simple-form test through the roots: `w < 0 < w'`.
    pub fn is_simple_by_roots(&self) -> Result<bool> {
        let (w, w2) = self.roots()?;
        Ok(w.sign()? == Ordering::Less && w2.sign()? == Ordering::Greater)
    }

    /// Reduced-form test through the roots: `w < -1 < w' < 0`.
    pub fn is_reduced_by_roots(&self) -> Result<bool> {
        let (w, w2) = self.roots()?;
        let m1 = Real::from(-1);
        Ok(w.cmp_real(&m1)? == Ordering::Less
            && w2.cmp_real(&m1)? == Ordering::Greater
            && w2.sign()? == Ordering::Less)
    }

    /// Upper bound on the absolute values of both roots (Cauchy).
    pub fn root_bound(&self) -> BigRational {
        let m = self.b.abs().max(self.c.abs());
        BigRational::new(m, self.a.abs()) + BigRational::from_integer(1.into())
    }

    pub fn norm1(&self) -> BigInt {
        self.a.abs() + self.b.abs() + self.c.abs()
    }
}

/// Parses `[a,b,c]`; the brackets and surrounding spaces are optional.
impl std::str::FromStr for QForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<QForm> {
        let bad = || Error::InvalidArgument(format!("cannot parse form {s:?}, expected [a,b,c]"));
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        let parts: Vec<BigInt> = t
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match <[BigInt; 3]>::try_from(parts) {
            Ok([a, b, c]) => Ok(QForm { a, b, c }),
            Err(_) => Err(bad()),
        }
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

impl Serialize for QForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [json_number(&self.a), json_number(&self.b), json_number(&self.c)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for QForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[serde_json::Number; 3]>::deserialize(d)?;
        Ok(QForm {
            a: from_json_number(&a)?,
            b: from_json_number(&b)?,
            c: from_json_number(&c)?,
        })
    }
}
