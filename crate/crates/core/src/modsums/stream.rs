use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{check_k, LedgerRow, Representation, SumRequest, SumResult, SumScope, SumStatus};
use crate::cfrac::{family_iter, Family, FamilyElem};
use crate::error::{Error, Result};
use crate::qforms::{form_power_sum, FormClass, Group, IntPoly, QForm};
use crate::real::{Interval, Real, DEFAULT_PRECISION};

/// What is summed over each matrix of the stream.
enum Summand<'a> {
    /// `(Q|gamma)(x)^(k-1)` for every form, with the conditions of the
    /// representation.
    Forms { forms: &'a [QForm], k: u32, rep: Representation },
    /// `(P|gamma)(x)` in weight `d`.
    Poly { p: &'a IntPoly, d: usize },
}

fn ratio_pow(r: &BigRational, n: usize) -> BigRational {
    num_traits::pow(r.clone(), n)
}

fn enclose(partial: &Real, bound: &BigRational) -> Real {
    if bound.is_zero() {
        return partial.clone();
    }
    let prec = partial.precision().unwrap_or(DEFAULT_PRECISION);
    let iv = partial.to_interval(prec);
    let lo = iv.lo().to_rational() - bound;
    let hi = iv.hi().to_rational() + bound;
    Real::Interval(Interval::hull(&lo, &hi, prec))
}

/// Upper bound on `|x|` for the root bound of a reduced form, rounded up to
/// an integer.
fn root_bound_ceil(q: &QForm) -> BigInt {
    q.root_bound().ceil().to_integer()
}

struct Runner<'a> {
    family: Family,
    x: &'a Real,
    summand: Summand<'a>,
    tol: f64,
    depth: usize,
    keep_ledger: bool,
    /// Tail bound after index `i` is `tail_const * |delta_i|^tail_pow`.
    tail_const: BigRational,
    tail_pow: usize,
    closing_shifts: u64,
    certified: bool,
}

impl Runner<'_> {
    fn run(&self) -> Result<SumResult> {
        let tol = BigRational::from_float(self.tol).unwrap_or_else(BigRational::zero);
        let mut it = family_iter(self.family, self.x, self.closing_shifts);
        let mut partial = Real::zero();
        let mut terms = 0usize;
        let mut ledger = Vec::new();
        let mut last: Option<(usize, Real)> = None;
        let mut status = SumStatus::Exact;
        let mut bound = BigRational::zero();
        loop {
            let e = match it.next() {
                None => break,
                Some(e) => e?,
            };
            if let Some((idx, v1)) = &last {
                if e.index != *idx {
                    let b = &self.tail_const * ratio_pow(&v1.abs_upper(), self.tail_pow);
                    if b < tol {
                        status = SumStatus::Converged;
                        bound = b;
                        break;
                    }
                    if e.index > self.depth {
                        status = SumStatus::DepthExceeded;
                        bound = b;
                        break;
                    }
                }
            }
            self.visit(&e, &mut partial, &mut terms, &mut ledger)?;
            last = Some((e.index, e.v1.clone()));
        }
        let depth = last.map(|(i, _)| i).unwrap_or(0);
        Ok(SumResult {
            value: enclose(&partial, &bound),
            bound,
            certified: self.certified,
            status,
            terms,
            depth,
            ledger,
        })
    }

    fn visit(&self, e: &FamilyElem, partial: &mut Real, terms: &mut usize, ledger: &mut Vec<LedgerRow>) -> Result<()> {
        let g = &e.matrix;
        match &self.summand {
            Summand::Poly { p, d } => {
                let value = p.eval_hom(*d, &e.v0, &e.v1);
                *partial = partial.add(&value);
                *terms += 1;
                if self.keep_ledger {
                    ledger.push(LedgerRow {
                        step: e.index,
                        shift: e.shift.clone(),
                        form: None,
                        image: None,
                        matrix: g.clone(),
                        value,
                        cond_infinity: p.eval_hom_int(*d, &g.r, &g.t).is_negative(),
                        cond_x: true,
                        included: true,
                        closing: e.closing,
                    });
                }
            }
            Summand::Forms { forms, k, rep } => {
                for q in forms.iter() {
                    let value = q.eval_hom(&e.v0, &e.v1);
                    let cond_infinity = q.eval_int(&g.r, &g.t).is_negative();
                    let cond_x = match self.family {
                        Family::Gamma => match &e.image_floor {
                            Some(n) => q.eval_int(n, &BigInt::one()).is_positive(),
                            None => q.a.is_positive(),
                        },
                        Family::Gamma1 => {
                            if cond_infinity || !rep.is_conditioned() {
                                value.sign()? == Ordering::Greater
                            } else {
                                false
                            }
                        }
                        Family::GammaPrime => true,
                    };
                    let included = !rep.is_conditioned() || (cond_infinity && cond_x);
                    if included {
                        *partial = partial.add(&value.powi(k - 1));
                        *terms += 1;
                    }
                    if self.keep_ledger {
                        ledger.push(LedgerRow {
                            step: e.index,
                            shift: e.shift.clone(),
                            form: Some(q.clone()),
                            image: Some(q.act(g)),
                            matrix: g.clone(),
                            value,
                            cond_infinity,
                            cond_x,
                            included,
                            closing: e.closing,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn norm_power_sum<'a>(forms: impl IntoIterator<Item = &'a QForm>, k: u32) -> BigRational {
    let s: BigInt = forms.into_iter().map(|q| q.norm1().pow(k - 1)).sum();
    BigRational::from_integer(s)
}

/// Evaluates a form sum in the requested representation.
pub fn a_sum_stream(req: &SumRequest) -> Result<SumResult> {
    check_k(&req.scope, req.k, req.representation)?;
    if req.tol.is_nan() || req.tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if req.depth == 0 {
        return Err(Error::InvalidArgument("depth cap must be at least 1".into()));
    }
    let k = req.k;
    let m = (2 * k - 2) as usize;
    let four = BigRational::from_integer(4.into());
    match req.representation {
        Representation::Direct => {
            let x = req
                .x
                .as_rational()
                .ok_or_else(|| Error::InvalidArgument("direct enumeration needs a rational x".into()))?;
            let value = super::a_sum_direct(&req.scope, k, x)?;
            let members = super::direct_members(&req.scope, x)?;
            let ledger = if req.ledger {
                members
                    .iter()
                    .map(|q| LedgerRow {
                        step: 0,
                        shift: BigInt::zero(),
                        form: Some(q.clone()),
                        image: Some(q.clone()),
                        matrix: crate::mat2::Mat2::identity(),
                        value: Real::from(q.eval_rational(x)),
                        cond_infinity: true,
                        cond_x: true,
                        included: true,
                        closing: false,
                    })
                    .collect()
            } else {
                Vec::new()
            };
            Ok(SumResult {
                value: Real::from(value),
                bound: BigRational::zero(),
                certified: true,
                status: SumStatus::Exact,
                terms: members.len(),
                depth: 0,
                ledger,
            })
        }
        Representation::ReducedGammaPrime => {
            let forms = req.scope.reduced_forms()?;
            let b = forms.iter().map(root_bound_ceil).max().unwrap_or_default();
            // T^-k gamma(inf) = gamma(inf) - k must fall between the roots
            let per_block = 2 * &b + 2;
            let shifts = u64::try_from(&per_block).unwrap_or(u64::MAX);
            Runner {
                family: Family::GammaPrime,
                x: &req.x,
                summand: Summand::Forms { forms: &forms, k, rep: req.representation },
                tol: req.tol,
                depth: req.depth,
                keep_ledger: req.ledger,
                tail_const: four * BigRational::from_integer(per_block) * norm_power_sum(&forms, k),
                tail_pow: m,
                closing_shifts: shifts,
                certified: true,
            }
            .run()
        }
        rep => {
            let forms = req.scope.simple_forms()?;
            let gamma1 = matches!(rep, Representation::SimpleGamma1 | Representation::SimpleGamma1Unconditioned);
            Runner {
                family: if gamma1 { Family::Gamma1 } else { Family::Gamma },
                x: &req.x,
                summand: Summand::Forms { forms: &forms, k, rep },
                tol: req.tol,
                depth: req.depth,
                keep_ledger: req.ledger,
                tail_const: four * norm_power_sum(&forms, k),
                tail_pow: m,
                closing_shifts: 0,
                certified: !gamma1,
            }
            .run()
        }
    }
}

/// `P^Gamma(x) = sum_{gamma in Gamma(x)} (P|gamma)(x)` in weight `d`, or the
/// same over Gamma_1(x).
pub fn p_gamma_sum(p: &IntPoly, d: usize, x: &Real, group: Group, tol: f64, depth: usize, ledger: bool) -> Result<SumResult> {
    if d % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight {d} must be even")));
    }
    if let Some(n) = p.degree() {
        if n > d {
            return Err(Error::WrongDegree { expected: d, got: n });
        }
    }
    if tol.is_nan() || tol <= 0.0 || depth == 0 {
        return Err(Error::InvalidArgument("tolerance and depth must be positive".into()));
    }
    Runner {
        family: match group {
            Group::Gamma => Family::Gamma,
            Group::Gamma1 => Family::Gamma1,
        },
        x,
        summand: Summand::Poly { p, d },
        tol,
        depth,
        keep_ledger: ledger,
        tail_const: BigRational::from_integer(4 * p.norm1()),
        tail_pow: d,
        closing_shifts: 0,
        certified: group == Group::Gamma,
    }
    .run()
}

#[derive(Clone, Debug, Serialize)]
pub struct AStarResult {
    /// `A_{k,B}(x) + (-1)^k A_{k,-B}(x)` through the conditioned Gamma_1 sums.
    pub conditioned: SumResult,
    /// `P_{k,B}^{Gamma_1}(x)`.
    pub unconditioned: SumResult,
    /// `P_{k,B} = sum_{B^Sim} Q^(k-1) + (-1)^k sum_{(-B)^Sim} Q^(k-1)`.
    pub polynomial: IntPoly,
}

impl AStarResult {
    /// Whether the two evaluations agree within their bounds and `tol`.
    pub fn agree(&self, tol: f64) -> bool {
        let diff = (self.conditioned.to_f64() - self.unconditioned.to_f64()).abs();
        diff <= tol + self.conditioned.bound_f64() + self.unconditioned.bound_f64()
    }
}

fn combine(a: SumResult, b: SumResult, sign: i64) -> SumResult {
    let bv = if sign < 0 { b.value.neg() } else { b.value };
    let status = match (a.status, b.status) {
        (SumStatus::DepthExceeded, _) | (_, SumStatus::DepthExceeded) => SumStatus::DepthExceeded,
        (SumStatus::Exact, SumStatus::Exact) => SumStatus::Exact,
        _ => SumStatus::Converged,
    };
    let mut ledger = a.ledger;
    ledger.extend(b.ledger);
    SumResult {
        value: a.value.add(&bv),
        bound: a.bound + b.bound,
        certified: a.certified && b.certified,
        status,
        terms: a.terms + b.terms,
        depth: a.depth.max(b.depth),
        ledger,
    }
}

/// `A*_{k,B}(x) = A_{k,B}(x) + (-1)^k A_{k,-B}(x)` for a Gamma_1-class `B`,
/// evaluated both with the Gamma_1(x) conditions and as `P_{k,B}^{Gamma_1}`.
pub fn a_star_sum(b: &FormClass, k: u32, x: &Real, tol: f64, depth: usize) -> Result<AStarResult> {
    if b.group != Group::Gamma1 {
        return Err(Error::InvalidArgument("A* needs a Gamma_1-class".into()));
    }
    let neg = b.negated()?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let half = |cls: &FormClass| {
        a_sum_stream(&SumRequest {
            scope: SumScope::Class(cls.clone()),
            k,
            x: x.clone(),
            representation: Representation::SimpleGamma1,
            tol: tol / 2.0,
            depth,
            ledger: false,
        })
    };
    let conditioned = combine(half(b)?, half(&neg)?, sign);
    let pb = form_power_sum(b.simple_members(), k);
    let pneg = form_power_sum(neg.simple_members(), k);
    let polynomial = if sign > 0 { pb.add(&pneg) } else { pb.sub(&pneg) };
    let unconditioned = p_gamma_sum(&polynomial, (2 * k - 2) as usize, x, Group::Gamma1, tol, depth, false)?;
    Ok(AStarResult {
        conditioned,
        unconditioned,
        polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qforms::class_decomposition;
    use crate::real::parse_real;

    fn d5() -> SumScope {
        SumScope::Discriminant(5.into())
    }

    #[test]
    fn d5_at_one_over_pi() {
        let x = parse_real("1/pi").unwrap();
        for rep in Representation::ALL.into_iter().filter(|r| *r != Representation::Direct) {
            let res = a_sum_stream(&SumRequest::new(d5(), 2, x.clone(), rep).tol(1e-9).depth(2000)).unwrap();
            assert!((res.to_f64() - 2.0).abs() < 1e-6, "{rep:?}: {}", res.to_f64());
            assert_eq!(res.status, SumStatus::Converged, "{rep:?} depth {} bound {}", res.depth, res.bound_f64());
        }
    }

    #[test]
    fn rational_streams_are_exact() {
        let x = Real::ratio(2, 5);
        for rep in Representation::ALL {
            let res = a_sum_stream(&SumRequest::new(d5(), 2, x.clone(), rep)).unwrap();
            assert_eq!(res.value, Real::from(2), "{rep:?}");
            assert_eq!(res.status, SumStatus::Exact);
        }
    }

    #[test]
    fn polynomial_sums() {
        let p2 = IntPoly::from_i64(&[-2, 0, 2]);
        let p4 = IntPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 2]);
        let x = parse_real("1/pi").unwrap();
        let r = p_gamma_sum(&p2, 2, &x, Group::Gamma, 1e-10, 200, false).unwrap();
        assert!((r.to_f64() - 2.0).abs() < 1e-6);
        let r = p_gamma_sum(&p2, 2, &Real::from(3), Group::Gamma, 1e-10, 200, false).unwrap();
        assert_eq!(r.value, Real::from(2));
        let r = p_gamma_sum(&p4, 6, &x, Group::Gamma, 1e-10, 200, false).unwrap();
        assert!((r.to_f64() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn a_star_d5() {
        let b = class_decomposition(&5.into(), Group::Gamma1).unwrap().remove(0);
        let x = parse_real("1/pi").unwrap();
        let r = a_star_sum(&b, 2, &x, 1e-9, 200).unwrap();
        assert!((r.conditioned.to_f64() - 4.0).abs() < 1e-6, "{}", r.conditioned.to_f64());
        assert!(r.agree(1e-6), "{} vs {}", r.conditioned.to_f64(), r.unconditioned.to_f64());
        let r = a_star_sum(&b, 3, &Real::ratio(1, 3), 1e-9, 200).unwrap();
        let direct = super::super::a_sum_direct(&SumScope::Class(b.clone()), 3, &BigRational::new(1.into(), 3.into())).unwrap();
        let neg = b.negated().unwrap();
        let direct_neg = super::super::a_sum_direct(&SumScope::Class(neg), 3, &BigRational::new(1.into(), 3.into())).unwrap();
        assert_eq!(r.conditioned.value, Real::from(direct - direct_neg));
    }

    #[test]
    fn odd_k_needs_gamma1() {
        let req = SumRequest::new(d5(), 3, Real::zero(), Representation::SimpleGamma);
        assert!(matches!(a_sum_stream(&req), Err(Error::OddWeightForGammaScope(3))));
    }
}
