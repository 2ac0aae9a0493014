use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::{SuiteReport, VerifyConfig};
use crate::cfrac::{membership_sets, minus_cf, plus_cf, FamilyElem, GammaFamily, GammaPrimeFamily};
use crate::error::Result;
use crate::mat2::Mat2;
use crate::real::{parse_real_with_precision, rational_to_f64, Real};

const STEPS: usize = 30;
/// Entry bound for the exhaustive membership comparison.
const BALL: i64 = 50;

fn close(a: &Real, b: &Real) -> bool {
    let d = a.sub(b);
    d.is_zero() || (!d.is_exact() && rational_to_f64(&d.abs_upper()) < 1e-25)
}

fn decreasing(a: &Real, b: &Real) -> Result<bool> {
    Ok(a.cmp_real(b)? == Ordering::Greater)
}

fn plus_laws(r: &mut SuiteReport, name: &str, x: &Real) -> Result<()> {
    let steps = plus_cf(x, STEPS)?;
    let mut telescoped = Real::zero();
    for (i, s) in steps.iter().enumerate() {
        let g = &s.gamma;
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        r.check(g.det() == sign, || format!("{name} plus {i}: det {} ", g.det()));
        if let Some(img) = g.apply(x)? {
            r.check(close(&img, &s.state), || format!("{name} plus {i}: gamma_i(x) != x_i"));
        }
        let (top, bottom) = g.apply_vec(x, &Real::one());
        r.check(close(&top, &s.delta_prev) && close(&bottom, &s.delta), || {
            format!("{name} plus {i}: gamma_i (x,1) != (delta_i-1, delta_i)")
        });
        if i == 0 {
            r.check(close(&s.delta, &Real::one()), || format!("{name}: delta_0 = {}", s.delta));
            continue;
        }
        let prev = &steps[i - 1];
        // delta_{i} = delta_{i-2} - n_{i-1} delta_{i-1}
        let rec = prev.delta_prev.sub(&Real::from(prev.digit.clone()).mul(&prev.delta));
        r.check(close(&rec, &s.delta), || format!("{name} plus {i}: delta recurrence"));
        let pr = &prev.digit * &prev.p + steps.get(i.wrapping_sub(2)).map_or(BigInt::from(0), |w| w.p.clone());
        r.check(pr == s.p, || format!("{name} plus {i}: p recurrence"));
        // p_{i-1} q_{i-2} - p_{i-2} q_{i-1} = (-1)^i
        let det = &s.p * &prev.q - &prev.p * &s.q;
        r.check(det == sign, || format!("{name} plus {i}: convergent determinant {det}"));
        if s.delta.is_zero() {
            r.check(s.terminal || prev.terminal || x.is_exact(), || format!("{name}: delta vanished"));
        } else {
            r.check(decreasing(&prev.delta, &s.delta)? && s.delta.sign()? == Ordering::Greater, || {
                format!("{name} plus {i}: delta not strictly decreasing and positive")
            });
        }
        telescoped = telescoped.add(&s.delta_prev.powi(2)).sub(&s.delta.powi(2));
        let expect = Real::one().sub(&s.delta.powi(2));
        r.check(close(&telescoped, &expect), || format!("{name} plus {i}: telescoping sum"));
    }
    Ok(())
}

fn minus_laws(r: &mut SuiteReport, name: &str, x: &Real) -> Result<()> {
    let steps = minus_cf(x, STEPS)?;
    for (i, s) in steps.iter().enumerate() {
        r.check(s.gamma.det() == BigInt::one(), || format!("{name} minus {i}: det {}", s.gamma.det()));
        if let Some(img) = s.gamma.apply(x)? {
            r.check(close(&img, &s.state), || format!("{name} minus {i}: gamma~_i(x) != x_i"));
        }
        if i == 0 {
            r.check(close(&s.delta, &Real::one()), || format!("{name}: delta~_0 = {}", s.delta));
            continue;
        }
        let prev = &steps[i - 1];
        r.check(s.digit >= BigInt::from(2), || format!("{name} minus {i}: digit {}", s.digit));
        // delta~_{i} = m_{i-1} delta~_{i-1} - delta~_{i-2}
        let rec = Real::from(prev.digit.clone()).mul(&prev.delta).sub(&prev.delta_prev);
        r.check(close(&rec, &s.delta), || format!("{name} minus {i}: delta~ recurrence"));
        let p_rec = &prev.digit * &prev.p - steps.get(i.wrapping_sub(2)).map_or(BigInt::from(0), |w| w.p.clone());
        r.check(p_rec == s.p, || format!("{name} minus {i}: p~ recurrence"));
        if !s.delta.is_zero() {
            r.check(decreasing(&prev.delta, &s.delta)? && s.delta.sign()? == Ordering::Greater, || {
                format!("{name} minus {i}: delta~ not strictly decreasing and positive")
            });
        }
    }
    Ok(())
}

fn bounded(iter: impl Iterator<Item = Result<FamilyElem>>, bound: i64) -> Result<Vec<Mat2>> {
    let b = BigInt::from(bound);
    let mut v = Vec::new();
    for e in iter {
        let g = e?.matrix;
        // bottom rows grow monotonically along both streams
        if g.t.magnitude() > b.magnitude() {
            break;
        }
        let g = g.normalized();
        if g.max_abs_entry() <= b {
            v.push(g);
        }
    }
    v.sort();
    v.dedup();
    Ok(v)
}

/// For rational `x` the inequalities also admit the closing matrix of the
/// second expansion `[..., n_N - 1, 1]`.
fn alternative_closing(x: &Real) -> Result<Option<Mat2>> {
    if x.as_rational().is_none() {
        return Ok(None);
    }
    let steps = plus_cf(x, usize::MAX)?;
    let last = steps.last().expect("a rational expansion has a step");
    let n: BigInt = &last.digit - 1;
    let g = Mat2::epsilon()
        .mul(&Mat2::t_pow(&BigInt::from(-1)))
        .mul(&Mat2::epsilon())
        .mul(&Mat2::t_pow(&-n))
        .mul(&last.gamma);
    Ok(Some(g.normalized()))
}

fn membership_agreement(r: &mut SuiteReport, name: &str, x: &Real) -> Result<()> {
    let (gamma, prime) = membership_sets(x, BALL)?;
    let mut from_stream = bounded(GammaFamily::new(x), BALL)?;
    if let Some(alt) = alternative_closing(x)? {
        if alt.max_abs_entry() <= BigInt::from(BALL) && !from_stream.contains(&alt) {
            from_stream.push(alt);
            from_stream.sort();
        }
    }
    r.check(gamma == from_stream, || {
        format!("{name}: inequalities give {} elements of Gamma(x), the stream {}", gamma.len(), from_stream.len())
    });
    // the description of Gamma(x)' is claimed for irrational x only
    if x.as_rational().is_none() {
        let from_blocks = bounded(GammaPrimeFamily::new(x, 0), BALL)?;
        r.check(prime == from_blocks, || {
            format!("{name}: inequalities give {} elements of Gamma(x)', the stream {}", prime.len(), from_blocks.len())
        });
    }
    Ok(())
}

pub(super) fn stream_laws(r: &mut SuiteReport, cfg: &VerifyConfig) -> Result<()> {
    for name in ["1/pi", "(1+sqrt(5))/2", "7/3"] {
        let x = parse_real_with_precision(name, cfg.prec.max(256))?;
        plus_laws(r, name, &x)?;
        minus_laws(r, name, &x)?;
        membership_agreement(r, name, &x)?;
    }
    Ok(())
}
