//! Numerical audit of the functional equations satisfied by `P^Gamma`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::modsums::p_gamma_sum;
use crate::qforms::{Group, IntPoly};
use crate::real::{rational_to_f64, Real};

use super::cocycle_check;

/// Depth cap for each `P^Gamma` evaluation.
const SUM_DEPTH: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `P^Gamma(x) = P^Gamma(x+1)`
    Translation,
    /// `P^Gamma(x) - P^Gamma(-x)` against the piecewise `P_1`, `P_2` formula.
    Reflection,
    /// `P^Gamma(x) - x^d P^Gamma(1/x) = chi_(0,1)(x) (P|(1+eps))(x) - P(x)`, `x > 0`, `x != 1`.
    Inversion,
    /// `P^Gamma(x) - x^d P^Gamma(-1/x) = -P(x)` for `P` in `W+`.
    SRelation,
    /// `P^Gamma(x) = P^Gamma(-x)` for `P` in `W+`.
    Evenness,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: IdentityKind,
    pub x: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Upper bound on `|lhs - rhs|`, enclosures included.
    pub residual: f64,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityAudit {
    pub poly: IntPoly,
    pub degree: usize,
    pub in_w_plus: bool,
    pub tol: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `AuditFailure` naming the first failing identity and sample.
    pub fn ensure(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.pass) {
            None => Ok(()),
            Some(c) => Err(Error::AuditFailure(format!(
                "{:?} at x = {}: lhs {} rhs {} residual {:e}",
                c.identity, c.x, c.lhs, c.rhs, c.residual
            ))),
        }
    }
}

fn check(identity: IdentityKind, x: &Real, lhs: Real, rhs: Real, tol: f64) -> IdentityCheck {
    let diff = lhs.sub(&rhs);
    let exact = diff.is_exact();
    let residual = diff.abs_upper();
    let pass = if exact {
        residual == BigRational::from_integer(0.into())
    } else {
        rational_to_f64(&residual) <= tol
    };
    IdentityCheck {
        identity,
        x: if x.is_exact() { x.to_string() } else { x.to_decimal(15) },
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        residual: rational_to_f64(&residual),
        exact,
        pass,
    }
}

struct Ctx<'a> {
    p: &'a IntPoly,
    d: usize,
    sum_tol: f64,
}

impl Ctx<'_> {
    fn pg(&self, x: &Real) -> Result<Real> {
        Ok(p_gamma_sum(self.p, self.d, x, Group::Gamma, self.sum_tol, SUM_DEPTH, false)?.value)
    }

    fn slash_at(&self, q: &IntPoly, g: &Mat2, x: &Real) -> Result<Real> {
        Ok(q.slash(g, self.d)?.eval(x))
    }
}

fn audit_one(ctx: &Ctx, x: &Real, w_plus: bool, tol: f64) -> Result<Vec<IdentityCheck>> {
    let (p, d) = (ctx.p, ctx.d);
    let eps = Mat2::epsilon();
    let one = Real::one();
    let mut out = Vec::new();

    let at_x = ctx.pg(x)?;
    out.push(check(IdentityKind::Translation, x, at_x.clone(), ctx.pg(&x.add(&one))?, tol));

    let at_neg = ctx.pg(&x.neg())?;
    if !x.is_integer() {
        // x in (m, m + 1/2] or (m + 1/2, m + 1)
        let m = x.floor()?;
        let frac = x.sub(&Real::from(m.clone()));
        let lower_half = frac.cmp_real(&Real::ratio(1, 2))? != Ordering::Greater;
        let p1 = p.add(&p.slash(&eps, d)?);
        let u = Mat2::u();
        let su2 = Mat2::s().mul(&u).mul(&u);
        let p2 = p.add(&p.slash(&u, d)?).sub(&p.slash(&su2, d)?).slash(&eps, d)?;
        let up = Mat2::t_pow(&(&m + BigInt::from(1))).mul(&Mat2::sigma());
        let down = Mat2::t_pow(&-&m);
        let rhs = if lower_half {
            ctx.slash_at(&p2, &down, x)?.sub(&ctx.slash_at(&p1, &up, x)?)
        } else {
            ctx.slash_at(&p1, &down, x)?.sub(&ctx.slash_at(&p2, &up, x)?)
        };
        out.push(check(IdentityKind::Reflection, x, at_x.sub(&at_neg), rhs, tol));
    }

    let positive = x.sign()? == Ordering::Greater;
    if positive && x.cmp_real(&one)? != Ordering::Equal {
        let xd = x.powi(d as u32);
        let lhs = at_x.sub(&xd.mul(&ctx.pg(&x.recip()?)?));
        let mut rhs = p.eval(x).neg();
        if x.cmp_real(&one)? == Ordering::Less {
            rhs = rhs.add(&p.add(&p.slash(&eps, d)?).eval(x));
        }
        out.push(check(IdentityKind::Inversion, x, lhs, rhs, tol));
    }

    if w_plus && !x.is_zero() {
        let xd = x.powi(d as u32);
        let lhs = at_x.sub(&xd.mul(&ctx.pg(&x.recip()?.neg())?));
        out.push(check(IdentityKind::SRelation, x, lhs, p.eval(x).neg(), tol));
        out.push(check(IdentityKind::Evenness, x, at_x, at_neg, tol));
    }
    Ok(out)
}

/// Evaluates every applicable identity for `P^Gamma` in weight `d` at each
/// sample. The `W+`-only checks run when `P` is even and satisfies the
/// cocycle conditions.
pub fn identity_audit(p: &IntPoly, d: usize, samples: &[Real], tol: f64) -> Result<IdentityAudit> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let in_w_plus = p.is_even() && cocycle_check(p, d)?.pass;
    let ctx = Ctx {
        p,
        d,
        sum_tol: tol / 1e4,
    };
    let per_sample: Vec<Vec<IdentityCheck>> = samples
        .par_iter()
        .map(|x| audit_one(&ctx, x, in_w_plus, tol))
        .collect::<Result<_>>()?;
    Ok(IdentityAudit {
        poly: p.clone(),
        degree: d,
        in_w_plus,
        tol,
        checks: per_sample.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_real;

    fn x(s: &str) -> Real {
        parse_real(s).unwrap()
    }

    #[test]
    fn d5_weight2() {
        let p = IntPoly::from_i64(&[-2, 0, 2]);
        let samples = [x("1/pi"), x("1/3"), x("7/3"), x("(1+sqrt(5))/2"), x("-3/7")];
        let audit = identity_audit(&p, 2, &samples, 1e-8).unwrap();
        assert!(audit.in_w_plus);
        for c in &audit.checks {
            assert!(c.pass, "{c:?}");
        }
        audit.ensure().unwrap();
    }

    #[test]
    fn non_cocycle_polynomial() {
        // only the identities valid for every P apply
        let p = IntPoly::from_i64(&[1, 2, 0, -1]);
        let audit = identity_audit(&p, 4, &[x("2/5"), x("1/e"), x("8/3")], 1e-8).unwrap();
        assert!(!audit.in_w_plus);
        assert!(audit.checks.iter().all(|c| c.identity != IdentityKind::SRelation));
        audit.ensure().unwrap();
    }
}
