use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{discriminants, SuiteReport, VerifyConfig};
use crate::error::Result;
use crate::modsums::{
    a_sum_direct_rational, a_sum_stream, bijection_audit, p_gamma_sum, zagier_lists, Representation, SumRequest,
    SumScope,
};
use crate::periods::{l_value, period_polynomial, PeriodScope};
use crate::qforms::Group;
use crate::real::{parse_real_with_precision, rational_to_f64, Real};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `value` rounds or truncates to `printed` at the printed number of digits.
fn matches_printed(value: f64, printed: &str) -> bool {
    let p: f64 = printed.parse().expect("literal");
    let (mantissa, exp) = match printed.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().expect("literal")),
        None => (printed, 0),
    };
    let decimals = mantissa.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let unit = 10f64.powi(exp - decimals);
    value >= p - 0.5 * unit && value < p + unit
}

const TABLE_FIRST: [&str; 5] = ["1.216989", "0.113636", "0.002150", "0.000008", "0.000008"];
const TABLE_SECOND: [&str; 5] = ["0.580369", "0.084943", "0.001896", "6.86e-17", "1.57e-18"];

pub(super) fn tables(r: &mut SuiteReport, cfg: &VerifyConfig) -> Result<()> {
    let x = parse_real_with_precision("1/pi", cfg.prec)?;
    let lists = zagier_lists(&BigInt::from(5), &x, 20)?;
    r.check(lists.len() == 2, || format!("expected 2 lists, got {}", lists.len()));
    let mut total = Real::zero();
    for (list, (table, sum)) in lists.iter().zip([(TABLE_FIRST, 1.332791), (TABLE_SECOND, 0.667208)]) {
        let values: Vec<f64> = list.rows.iter().filter(|w| w.included).map(|w| w.value.to_f64()).collect();
        for (i, printed) in table.iter().enumerate() {
            let got = values.get(i).copied();
            r.check(got.is_some_and(|v| matches_printed(v, printed)), || {
                format!("list {}: entry {} is {:?}, printed {}", list.negated, i + 1, got, printed)
            });
        }
        let s = list.sum.to_f64();
        r.check((s - sum).abs() <= 1e-5, || format!("list {}: sum {s} vs {sum}", list.negated));
        r.note(format!("list {}: sum {}", list.negated, list.sum.to_decimal(10)));
        total = total.add(&list.sum);
    }
    let t = total.to_f64();
    r.check((t - 2.0).abs() <= 1e-5, || format!("grand total {t}"));
    Ok(())
}

/// Three rationals, `1/pi` and `1 + sqrt(3)` as an interval.
fn constant_value_points(prec: u32) -> Result<Vec<Real>> {
    let mut v: Vec<Real> = ["2/5", "7/3", "-11/13", "1/pi"]
        .iter()
        .map(|s| parse_real_with_precision(s, prec))
        .collect::<Result<_>>()?;
    v.push(parse_real_with_precision("1+sqrt(3)", prec)?.into_interval(prec));
    Ok(v)
}

pub(super) fn constant_value(r: &mut SuiteReport, cfg: &VerifyConfig, dmax: i64) -> Result<()> {
    let points = constant_value_points(cfg.prec)?;
    let jobs: Vec<(i64, u32, usize)> = discriminants(dmax)
        .into_iter()
        .flat_map(|d| [2u32, 4].into_iter().flat_map(move |k| (0..5).map(move |j| (d, k, j))))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(d, k, j)| -> Result<_> {
            let expected = match k {
                2 => l_value(d, -1)? * rat(-5, 1),
                _ => l_value(d, -3)?,
            };
            let x = &points[j];
            let (ok, got) = match x.as_rational() {
                Some(q) => {
                    let v = a_sum_direct_rational(&d.into(), k, q)?;
                    (v == expected, rational_to_f64(&v))
                }
                None => {
                    let req = SumRequest::new(SumScope::Discriminant(d.into()), k, x.clone(), Representation::SimpleGamma)
                        .tol(1e-10);
                    let res = a_sum_stream(&req)?;
                    let diff = res.value.sub(&Real::from(expected.clone())).abs_upper();
                    (rational_to_f64(&diff) <= 1e-8, res.to_f64())
                }
            };
            Ok((d, k, x.to_string(), ok, got, expected))
        })
        .collect::<Result<_>>()?;
    for (d, k, x, ok, got, expected) in results {
        r.check(ok, || format!("D={d} k={k} x={x}: {got} vs {expected}"));
    }
    Ok(())
}

pub(super) fn higher_weight(r: &mut SuiteReport, cfg: &VerifyConfig) -> Result<()> {
    let mut vals = Vec::new();
    for s in ["1/pi", "1/e"] {
        let x = parse_real_with_precision(s, cfg.prec)?;
        let req = SumRequest::new(SumScope::Discriminant(5.into()), 6, x, Representation::SimpleGamma).tol(1e-12);
        let res = a_sum_stream(&req)?;
        r.note(format!("A_6,5({s}) = {} +- {:e}", res.value.to_decimal(12), res.bound_f64()));
        vals.push(res);
    }
    let gap = (vals[0].to_f64() - vals[1].to_f64()).abs();
    let slack = vals[0].bound_f64() + vals[1].bound_f64();
    r.check(gap - slack > 1e-4, || format!("|A(1/pi) - A(1/e)| = {gap}"));
    Ok(())
}

pub(super) fn representations(r: &mut SuiteReport, cfg: &VerifyConfig, dmax: i64) -> Result<()> {
    let ds = discriminants(dmax);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cases: Vec<(i64, u32, BigRational)> = (0..20)
        .map(|_| {
            let d = ds[rng.gen_range(0..ds.len())];
            let k = if rng.gen_bool(0.5) { 2 } else { 4 };
            let q = rng.gen_range(1..=20i64);
            let p = rng.gen_range(-3 * q..=3 * q);
            (d, k, rat(p, q))
        })
        .collect();
    let out: Vec<_> = cases
        .par_iter()
        .map(|(d, k, x)| -> Result<_> {
            let direct = a_sum_direct_rational(&(*d).into(), *k, x)?;
            let xr = Real::from(x.clone());
            let mut vals = Vec::new();
            for rep in [
                Representation::SimpleGamma,
                Representation::ReducedGammaPrime,
                Representation::SimpleGammaUnconditioned,
            ] {
                let req = SumRequest::new(SumScope::Discriminant((*d).into()), *k, xr.clone(), rep).depth(10_000);
                vals.push((format!("{rep:?}"), a_sum_stream(&req)?.value));
            }
            let p = period_polynomial(&PeriodScope::Discriminant((*d).into()), *k)?;
            let pg = p_gamma_sum(&p.poly, p.slash_degree(), &xr, Group::Gamma, 1e-12, 10_000, false)?;
            vals.push(("PGamma".into(), pg.value));
            Ok((*d, *k, x.clone(), direct, vals))
        })
        .collect::<Result<_>>()?;
    for (d, k, x, direct, vals) in out {
        for (name, v) in vals {
            let ok = match v.as_rational() {
                Some(q) => *q == direct,
                None => rational_to_f64(&v.sub(&Real::from(direct.clone())).abs_upper()) <= 1e-10,
            };
            r.check(ok, || format!("D={d} k={k} x={x}: {name} = {v} vs direct {direct}"));
        }
    }
    Ok(())
}

pub(super) fn bijections(r: &mut SuiteReport, dmax: i64) -> Result<()> {
    let xs = [rat(0, 1), rat(1, 2), rat(1, 3), rat(2, 5), rat(7, 3)];
    let reps = [
        Representation::SimpleGamma,
        Representation::ReducedGammaPrime,
        Representation::SimpleGamma1,
    ];
    let jobs: Vec<(i64, usize, Representation)> = discriminants(dmax)
        .into_iter()
        .flat_map(|d| (0..xs.len()).flat_map(move |j| reps.into_iter().map(move |rep| (d, j, rep))))
        .collect();
    let out: Vec<_> = jobs
        .par_iter()
        .map(|&(d, j, rep)| {
            let res = bijection_audit(&SumScope::Discriminant(d.into()), &xs[j], rep);
            (d, j, rep, res)
        })
        .collect();
    let mut pairs = 0;
    for (d, j, rep, res) in out {
        match res {
            Ok(a) => {
                pairs += a.pairs;
                r.check(true, String::new);
            }
            Err(e) if e.is_precision() => return Err(e),
            Err(e) => r.check(false, || format!("D={d} x={} {rep:?}: {e}", xs[j])),
        }
    }
    r.note(format!("{pairs} (form, matrix) pairs matched"));
    Ok(())
}
