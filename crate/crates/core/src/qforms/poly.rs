use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::form::QForm;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::real::{Interval, Real};

/// Polynomial with integer coefficients, lowest degree first, no trailing
/// zeros. The weight `d` of the slash action is passed where it matters,
/// since `P` of degree below `d` is a legitimate element of weight `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    #[serde(serialize_with = "crate::ser::big_vec", deserialize_with = "crate::ser::big_vec_de")]
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[n] = c.into();
        Self::new(v)
    }

    /// `c1 X + c0`.
    pub fn linear(c1: &BigInt, c0: &BigInt) -> Self {
        Self::new(vec![c0.clone(), c1.clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::constant(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `P(-X)`.
    pub fn reflect(&self) -> IntPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    fn check_weight(&self, d: usize) -> Result<()> {
        match self.degree() {
            Some(n) if n > d => Err(Error::WrongDegree { expected: d, got: n }),
            _ => Ok(()),
        }
    }

    /// `(P|_{-d} g)(X) = (tX + u)^d P((rX + s)/(tX + u))`.
    pub fn slash(&self, g: &Mat2, d: usize) -> Result<IntPoly> {
        self.check_weight(d)?;
        let num = IntPoly::linear(&g.r, &g.s);
        let den = IntPoly::linear(&g.t, &g.u);
        let mut out = IntPoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = num.pow(j as u32).mul(&den.pow((d - j) as u32)).scale(c);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `P_hom(x, y) = sum c_j x^j y^(d-j)` at integers.
    pub fn eval_hom_int(&self, d: usize, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            acc += c * x.pow(j as u32) * y.pow((d - j) as u32);
        }
        acc
    }

    /// `P_hom(x, y)` in certified arithmetic.
    pub fn eval_hom(&self, d: usize, x: &Real, y: &Real) -> Real {
        let mut acc = Real::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = x.powi(j as u32).mul(&y.powi((d - j) as u32));
            acc = acc.add(&Real::from(c.clone()).mul(&t));
        }
        acc
    }

    /// `P(x)` by Horner's rule.
    pub fn eval(&self, x: &Real) -> Real {
        let mut acc = Real::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Real::from(c.clone()));
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `P` (weight `d`) at a point of the projective line; at
    /// infinity this is the sign of the `X^d` coefficient.
    pub fn sign_at(&self, d: usize, x: Option<&BigRational>) -> Ordering {
        match x {
            None => self.coeff(d).cmp(&BigInt::zero()),
            Some(x) => self.eval_rational(x).cmp(&BigRational::zero()),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Number of real roots counted with multiplicity.
    pub fn real_root_count(&self) -> usize {
        let mut g = RPoly::from_int(self);
        let mut total = 0;
        while g.degree() > 0 {
            total += Sturm::new(&g).count_all();
            g = g.gcd(&g.derivative());
        }
        total
    }

    /// All rational roots, sorted and without repetition.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        if n == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let lead = self.coeffs[n].abs();
        // strip factors of X first: they give the root 0
        let shift = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            roots.push(BigRational::zero());
        }
        let core = IntPoly::new(self.coeffs[shift..].to_vec());
        if core.degree().unwrap_or(0) > 0 {
            let sq = RPoly::from_int(&core).squarefree();
            let st = Sturm::new(&sq);
            let qs = divisors(&lead);
            for (lo, hi) in st.isolate() {
                // shrink until at most one candidate p/q per q fits
                let (lo, hi) = st.refine(lo, hi, &BigRational::new(BigInt::one(), &lead * &lead + 1));
                for q in &qs {
                    let qr = BigRational::from_integer(q.clone());
                    let p_lo = (&lo * &qr).ceil().to_integer();
                    let p_hi = (&hi * &qr).floor().to_integer();
                    let mut p = p_lo;
                    while p <= p_hi {
                        let cand = BigRational::new(p.clone(), q.clone());
                        if cand > lo && core.eval_rational(&cand).is_zero() {
                            roots.push(cand);
                        }
                        p += 1;
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Membership in F_d: degree exactly `d`, exactly two real roots counted
    /// with multiplicity, none of them rational.
    pub fn check_fd(&self, d: usize) -> Result<()> {
        if d % 2 != 0 {
            return Err(Error::InvalidArgument(format!("weight {d} is odd")));
        }
        if self.degree() != Some(d) {
            return Err(Error::NotInFd(format!(
                "{self} does not have degree exactly {d} (it vanishes at infinity)"
            )));
        }
        let n = self.real_root_count();
        if n != 2 {
            return Err(Error::NotInFd(format!("{self} has {n} real roots")));
        }
        if let Some(r) = self.rational_roots().first() {
            return Err(Error::NotInFd(format!("{self} has the rational root {r}")));
        }
        Ok(())
    }

    /// The two roots `(w_P, w'_P)` labelled so that
    /// `sign(P(inf)) w_P < sign(P(inf)) w'_P`. Quadratics give exact surds,
    /// higher degrees certified intervals of width at most `2^-prec`.
    pub fn root_data(&self, d: usize, prec: u32) -> Result<(Real, Real)> {
        if d == 2 {
            let q = QForm::new(self.coeff(2), self.coeff(1), self.coeff(0));
            return q.roots().map_err(|e| match e {
                Error::NonPositiveDiscriminant(_) => Error::NotInFd(format!("{self} has no real roots")),
                e => e,
            });
        }
        self.check_fd(d)?;
        let st = Sturm::new(&RPoly::from_int(self));
        let iso = st.isolate();
        debug_assert_eq!(iso.len(), 2);
        let eps = BigRational::new(BigInt::one(), BigInt::one() << prec);
        let mut roots = iso
            .into_iter()
            .map(|(lo, hi)| {
                let (lo, hi) = st.refine(lo, hi, &eps);
                Real::from(Interval::hull(&lo, &hi, prec))
            })
            .collect::<Vec<_>>();
        if self.coeff(d).is_negative() {
            roots.reverse();
        }
        let w2 = roots.pop().expect("two roots");
        let w = roots.pop().expect("two roots");
        Ok((w, w2))
    }

    /// `(I, J, D)` of the quartic `a X^4 + b X^3 + c X^2 + d X + e`.
    pub fn quartic_invariants(&self) -> Result<(BigInt, BigInt, BigInt)> {
        if self.degree() != Some(4) {
            return Err(Error::WrongDegree {
                expected: 4,
                got: self.degree().unwrap_or(0),
            });
        }
        let [e, d, c, b, a] = [0, 1, 2, 3, 4].map(|i| self.coeff(i));
        let i: BigInt = 12 * &a * &e - 3 * &b * &d + &c * &c;
        let j = 72 * &a * &c * &e + 9 * &b * &c * &d
            - 27 * &a * &d * &d
            - 27 * &e * &b * &b
            - 2 * &c * &c * &c;
        let disc = (4 * i.pow(3) - &j * &j) / 27;
        Ok((i, j, disc))
    }
}

/// `sum Q(X)^(k-1)` over the given forms.
pub fn form_power_sum<'a>(forms: impl IntoIterator<Item = &'a QForm>, k: u32) -> IntPoly {
    forms
        .into_iter()
        .fold(IntPoly::zero(), |acc, q| acc.add(&q.to_poly().pow(k - 1)))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let m = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if m.is_one() && i > 0 { String::new() } else { m.to_string() };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}X")?,
                _ => write!(f, "{coef}X^{i}")?,
            }
        }
        Ok(())
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            let other = &n / &k;
            if other != k {
                large.push(other);
            }
            small.push(k.clone());
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dense polynomial over the rationals, for Sturm sequences and gcds.
#[derive(Clone, Debug, PartialEq)]
struct RPoly(Vec<BigRational>);

impl RPoly {
    fn from_int(p: &IntPoly) -> Self {
        RPoly(p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with 0 for constants and the zero polynomial.
    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> RPoly {
        RPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
        .trim()
    }

    fn divmod(&self, d: &RPoly) -> (RPoly, RPoly) {
        let mut r = self.0.clone();
        if self.0.len() < d.0.len() {
            return (RPoly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.0.len() - d.0.len() + 1];
        let dl = d.lead().clone();
        for i in (0..q.len()).rev() {
            let c = &r[i + d.0.len() - 1] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(d.0.len() - 1);
        (RPoly(q).trim(), RPoly(r).trim())
    }

    fn monic(&self) -> RPoly {
        let l = self.lead().clone();
        RPoly(self.0.iter().map(|c| c / &l).collect())
    }

    fn gcd(&self, o: &RPoly) -> RPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn squarefree(&self) -> RPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.clone()
        } else {
            self.divmod(&g).0
        }
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

struct Sturm {
    seq: Vec<RPoly>,
}

impl Sturm {
    fn new(p: &RPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].divmod(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(RPoly(r.0.iter().map(|c| -c).collect()));
        }
        Sturm { seq }
    }

    fn changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut n = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    fn changes_at(&self, x: &BigRational) -> usize {
        Self::changes(self.seq.iter().map(|p| p.eval(x).cmp(&BigRational::zero())))
    }

    fn changes_at_infinity(&self, positive: bool) -> usize {
        Self::changes(self.seq.iter().map(|p| {
            let s = p.lead().cmp(&BigRational::zero());
            if positive || p.degree() % 2 == 0 {
                s
            } else {
                s.reverse()
            }
        }))
    }

    /// Distinct real roots.
    fn count_all(&self) -> usize {
        if self.seq[0].degree() == 0 {
            return 0;
        }
        self.changes_at_infinity(false) - self.changes_at_infinity(true)
    }

    /// Distinct roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.changes_at(lo) - self.changes_at(hi)
    }

    fn bound(&self) -> BigRational {
        let p = &self.seq[0];
        let l = p.lead().abs();
        let m = p.0.iter().map(|c| c.abs()).max().unwrap_or_default();
        m / l + BigRational::one()
    }

    /// Disjoint intervals `(lo, hi]`, each containing exactly one root,
    /// sorted left to right.
    fn isolate(&self) -> Vec<(BigRational, BigRational)> {
        let b = self.bound();
        let mut stack = vec![(-b.clone(), b)];
        let mut out = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            match self.count(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort();
        out
    }

    /// Bisects an isolating interval of a simple root down to width `eps`.
    fn refine(&self, mut lo: BigRational, mut hi: BigRational, eps: &BigRational) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(2.into());
        while &hi - &lo > *eps {
            let mid = (&lo + &hi) / &two;
            if self.count(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn slash_examples() {
        assert_eq!(p(&[-1, 0, 1]).slash(&Mat2::s(), 2).unwrap(), p(&[1, 0, -1]));
        let q = p(&[-2, 0, 2]);
        let sum = q.add(&q.slash(&Mat2::s(), 2).unwrap());
        assert!(sum.is_zero());
        assert_eq!(q.slash(&Mat2::identity(), 2).unwrap(), q);
        assert!(matches!(p(&[0, 0, 0, 1]).slash(&Mat2::s(), 2), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn slash_matches_form_action() {
        let g = Mat2::new(2, 1, 3, 2);
        let q = QForm::new(1, 3, 1);
        assert_eq!(q.to_poly().slash(&g, 2).unwrap(), q.act(&g).to_poly());
    }

    #[test]
    fn real_roots() {
        let f = p(&[4, 0, -5, 0, 1]);
        assert_eq!(f.real_root_count(), 4);
        assert!(matches!(f.check_fd(4), Err(Error::NotInFd(_))));
        assert_eq!(p(&[-2, 0, 0, 0, 1]).real_root_count(), 2);
        assert!(p(&[-2, 0, 0, 0, 1]).check_fd(4).is_ok());
        // (X^2 - 2)^2: two distinct roots, four with multiplicity
        assert_eq!(p(&[4, 0, -4, 0, 1]).real_root_count(), 4);
        let r = p(&[-1, -1, 0, 1, 1]).rational_roots();
        assert_eq!(r, vec![BigRational::from_integer((-1).into()), BigRational::one()]);
        assert_eq!(p(&[-1, 0, 0, 0, 4]).rational_roots().len(), 0);
        assert_eq!(p(&[-1, 0, 4]).rational_roots(), vec![BigRational::new((-1).into(), 2.into()), BigRational::new(1.into(), 2.into())]);
        assert!(p(&[-1, -1, 0, 1, 1]).check_fd(4).is_err());
    }

    #[test]
    fn quartic_roots_are_labelled() {
        let f = p(&[2, 0, 0, 0, -1]);
        let (w, w2) = f.root_data(4, 64).unwrap();
        // leading coefficient negative: w is the larger root 2^(1/4)
        assert!((w.to_f64() - 2f64.powf(0.25)).abs() < 1e-12);
        assert!((w2.to_f64() + 2f64.powf(0.25)).abs() < 1e-12);
        let (w, w2) = p(&[-1, -1, 1]).root_data(2, 64).unwrap();
        assert!(w.to_f64() < 0.0 && w2.to_f64() > 0.0);
    }

    #[test]
    fn quartic_invariants() {
        let inv = p(&[4, 0, -5, 0, 1]).quartic_invariants().unwrap();
        assert_eq!(inv, (73.into(), (-1190).into(), 5184.into()));
        let inv = p(&[0, 0, 0, 0, 1]).quartic_invariants().unwrap();
        assert_eq!(inv, (0.into(), 0.into(), 0.into()));
        let f = p(&[-2, 1, 3, -1, 5]);
        let (i, j, _) = f.quartic_invariants().unwrap();
        let (i2, j2, _) = f.slash(&Mat2::s(), 4).unwrap().quartic_invariants().unwrap();
        assert_eq!((i, j), (i2, j2));
        assert!(matches!(p(&[1, 1]).quartic_invariants(), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[-2, 0, 2]).to_string(), "2X^2 - 2");
        assert_eq!(p(&[0, 1, -1]).to_string(), "-X^2 + X");
        let js = serde_json::to_string(&p(&[-2, 0, 2])).unwrap();
        assert_eq!(js, r#"["-2","0","2"]"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p(&[-2, 0, 2]));
    }
}
