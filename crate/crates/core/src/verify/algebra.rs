use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{discriminants, SuiteReport, VerifyConfig};
use crate::error::Result;
use crate::periods::{cocycle_check, identity_audit, l_value, period_polynomial, simple_a_sum, PeriodScope};
use crate::qforms::{
    class_decomposition, enumerate_forms, minus_purely_periodic, reduced_cycle, simple_cycle, simple_purely_periodic,
    FormKind, Group, IntPoly, QForm,
};
use crate::real::{parse_real_with_precision, Real};

pub(super) fn cocycle(r: &mut SuiteReport, dmax: i64) -> Result<()> {
    let jobs: Vec<(i64, u32)> = discriminants(dmax)
        .into_iter()
        .flat_map(|d| [2u32, 4, 6, 8].into_iter().map(move |k| (d, k)))
        .collect();
    let out: Vec<_> = jobs
        .par_iter()
        .map(|&(d, k)| -> Result<_> {
            let p = period_polynomial(&PeriodScope::Discriminant(d.into()), k)?;
            let c = cocycle_check(&p.poly, p.slash_degree())?;
            Ok((d, k, p, c))
        })
        .collect::<Result<_>>()?;
    for (d, k, p, c) in &out {
        r.check(c.pass, || {
            format!("P_{k},{d}: P|(1+S) = {}, P|(1+U+U^2) = {}", c.residual_s, c.residual_u)
        });
        r.check(p.poly.is_even(), || format!("P_{k},{d} = {} is not even", p.poly));
    }
    let expect = [(2, IntPoly::from_i64(&[-2, 0, 2])), (4, IntPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 2]))];
    for (k, e) in expect {
        let p = period_polynomial(&PeriodScope::Discriminant(5.into()), k)?.poly;
        r.check(p == e, || format!("P_{k},5 = {p}, expected {e}"));
    }
    Ok(())
}

pub(super) fn l_oracle(r: &mut SuiteReport, dmax: i64) -> Result<()> {
    let out: Vec<_> = discriminants(dmax)
        .par_iter()
        .map(|&d| -> Result<_> { Ok((d, simple_a_sum(d)?, l_value(d, -1)?)) })
        .collect::<Result<_>>()?;
    for (d, a, l) in out {
        let rhs = -l * BigRational::from_integer(5.into());
        r.check(BigRational::from_integer(a.clone()) == rhs, || {
            format!("D={d}: simple a-sum {a} vs -5 L(-1) = {rhs}")
        });
    }
    Ok(())
}

/// Enumerated forms plus a box of small non-simple, non-reduced ones.
fn periodicity_sample(d: i64) -> Result<Vec<QForm>> {
    let mut forms = enumerate_forms(d, FormKind::Simple)?;
    forms.extend(enumerate_forms(d, FormKind::Reduced)?);
    for a in -8i64..=8 {
        for b in -12i64..=12 {
            if a == 0 || (b * b - d) % (4 * a) != 0 {
                continue;
            }
            forms.push(QForm::new(a, b, (b * b - d) / (4 * a)));
        }
    }
    forms.sort();
    forms.dedup();
    Ok(forms)
}

fn cycle_count(forms: &[QForm], cycle: impl Fn(&QForm) -> Result<Vec<QForm>>) -> Result<usize> {
    let mut cycles = BTreeSet::new();
    for q in forms {
        let mut c = cycle(q)?;
        c.sort();
        cycles.insert(c);
    }
    Ok(cycles.len())
}

pub(super) fn counting(r: &mut SuiteReport, dmax: i64) -> Result<()> {
    let out: Vec<_> = discriminants(dmax)
        .par_iter()
        .map(|&d| -> Result<_> {
            let simple = enumerate_forms(d, FormKind::Simple)?;
            let reduced = enumerate_forms(d, FormKind::Reduced)?;
            let by_simple = cycle_count(&simple, simple_cycle)?;
            let by_reduced = cycle_count(&reduced, reduced_cycle)?;
            let classes = class_decomposition(&BigInt::from(d), Group::Gamma1)?.len();
            let mut bad = Vec::new();
            if d <= 100 {
                for q in periodicity_sample(d)? {
                    if minus_purely_periodic(&q)? != q.is_reduced() || simple_purely_periodic(&q)? != q.is_simple() {
                        bad.push(q);
                    }
                }
            }
            Ok((d, simple.len(), reduced.len(), by_simple, by_reduced, classes, bad))
        })
        .collect::<Result<_>>()?;
    for (d, s, red, cs, cr, classes, bad) in out {
        r.check(s == 2 * red, || format!("D={d}: {s} simple vs {red} reduced"));
        r.check(cs == cr && cr == classes, || {
            format!("D={d}: {cs} simple cycles, {cr} reduced cycles, {classes} classes")
        });
        r.check(bad.is_empty(), || format!("D={d}: periodicity fails for {bad:?}"));
    }
    Ok(())
}

/// Positive, non-integer, non-half-integer points, on both sides of `m + 1/2`.
pub const IDENTITY_SAMPLES: [&str; 10] = [
    "1/pi",
    "1/e",
    "(1+sqrt(5))/2",
    "sqrt(2)",
    "1+sqrt(3)",
    "2/5",
    "7/3",
    "3/7",
    "e",
    "pi",
];

pub(super) fn identities(r: &mut SuiteReport, cfg: &VerifyConfig) -> Result<()> {
    let samples: Vec<Real> = IDENTITY_SAMPLES
        .iter()
        .map(|s| parse_real_with_precision(s, cfg.prec))
        .collect::<Result<_>>()?;
    for (coeffs, d) in [(&[-2i64, 0, 2][..], 2), (&[-1, 0, 1][..], 2), (&[-2, 0, 0, 0, 0, 0, 2][..], 6)] {
        let p = IntPoly::from_i64(coeffs);
        let audit = identity_audit(&p, d, &samples, 1e-8)?;
        r.check(audit.in_w_plus, || format!("{p} should lie in W+"));
        for c in &audit.checks {
            r.check(c.pass, || {
                format!("{p}: {:?} at x = {}: {} vs {} (residual {:e})", c.identity, c.x, c.lhs, c.rhs, c.residual)
            });
        }
    }
    Ok(())
}
