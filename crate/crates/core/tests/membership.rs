use num_bigint::BigInt;
use quadperiod::cfrac::{membership_sets, plus_cf, GammaFamily, GammaPrimeFamily};
use quadperiod::{parse_real, Mat2, Real};

// The bottom row (q_{i-1}, ...) of every element is non-decreasing in
// absolute value along both streams, so they can be cut once it passes the
// bound.
fn bounded(iter: impl Iterator<Item = quadperiod::Result<quadperiod::cfrac::FamilyElem>>, bound: i64) -> Vec<Mat2> {
    let b = BigInt::from(bound);
    let mut v: Vec<Mat2> = iter
        .map(|e| e.unwrap().matrix)
        .take_while(|g| g.t.magnitude() <= b.magnitude())
        .map(|g| g.normalized())
        .filter(|g| g.max_abs_entry() <= b)
        .collect();
    v.sort();
    v.dedup();
    v
}

fn check(x: &Real, bound: i64, closing_shifts: u64) {
    let (gamma, prime) = membership_sets(x, bound).unwrap();
    let mut from_stream = bounded(GammaFamily::new(x), bound);
    if let Some(alt) = alternative_closing(x) {
        if alt.max_abs_entry() <= BigInt::from(bound) {
            from_stream.push(alt);
            from_stream.sort();
        }
    }
    assert_eq!(gamma, from_stream, "Gamma(x) for x = {x}");
    // the description of Gamma(x)' is only claimed for irrational x
    if x.as_rational().is_none() {
        let from_blocks = bounded(GammaPrimeFamily::new(x, closing_shifts), bound);
        assert_eq!(prime, from_blocks, "Gamma(x)' for x = {x}");
    }
}

/// For rational `x` the inequalities also admit the closing matrix of the
/// second expansion `[..., n_N - 1, 1]`.
fn alternative_closing(x: &Real) -> Option<Mat2> {
    x.as_rational()?;
    let steps = plus_cf(x, 1000).unwrap();
    let last = steps.last().unwrap();
    let n: BigInt = &last.digit - 1;
    let g = Mat2::epsilon()
        .mul(&Mat2::t_pow(&BigInt::from(-1)))
        .mul(&Mat2::epsilon())
        .mul(&Mat2::t_pow(&-n))
        .mul(&last.gamma);
    Some(g.normalized())
}

#[test]
fn inequalities_describe_the_families() {
    for x in ["1/pi", "(1+sqrt(5))/2", "-sqrt(2)"] {
        check(&parse_real(x).unwrap(), 50, 0);
    }
}

#[test]
fn rational_points_with_closing_elements() {
    for x in ["7/3", "2/5", "0", "3", "-5/7"] {
        check(&parse_real(x).unwrap(), 20, 0);
    }
}
