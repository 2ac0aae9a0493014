use num_rational::BigRational;
use quadperiod::cfrac::plus_cf;
use quadperiod::modsums::{a_sum_direct_rational, a_sum_stream, Representation, SumRequest, SumScope};
use quadperiod::qforms::{enumerate_forms, FormKind};
use quadperiod::real::{parse_real, parse_real_with_precision, rational_to_f64};
use quadperiod::verify::discriminants;
use quadperiod::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SCATTERED: [&str; 10] = [
    "1/pi",
    "1/e",
    "sqrt(2)",
    "(1+sqrt(5))/2",
    "-7/3",
    "2/5",
    "13/17",
    "pi - 3",
    "-sqrt(3)/2",
    "5/8",
];

fn sum(d: i64, k: u32, x: &Real, rep: Representation) -> Real {
    let req = SumRequest::new(SumScope::Discriminant(d.into()), k, x.clone(), rep)
        .tol(1e-11)
        .depth(5000);
    a_sum_stream(&req).unwrap().value
}

fn close(a: &Real, b: &Real, tol: f64) -> bool {
    rational_to_f64(&a.sub(b).abs_upper()) <= tol
}

#[test]
fn representations_agree_with_direct_enumeration() {
    let ds = discriminants(50);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: Vec<(i64, u32, BigRational)> = (0..20)
        .map(|_| {
            let q = rng.gen_range(1..=20i64);
            (
                ds[rng.gen_range(0..ds.len())],
                [2, 4, 6][rng.gen_range(0..3)],
                BigRational::new(rng.gen_range(-2 * q..=2 * q).into(), q.into()),
            )
        })
        .collect();
    cases.par_iter().for_each(|(d, k, x)| {
        let direct = Real::from(a_sum_direct_rational(&(*d).into(), *k, x).unwrap());
        let xr = Real::from(x.clone());
        for rep in Representation::ALL.into_iter().filter(|r| *r != Representation::Direct) {
            let v = sum(*d, *k, &xr, rep);
            if rep.is_conditioned() {
                assert_eq!(v, direct, "D={d} k={k} x={x} {rep:?}");
            } else {
                assert!(close(&v, &direct, 1e-10), "D={d} k={k} x={x} {rep:?}: {v} vs {direct}");
            }
        }
    });
}

#[test]
fn sums_are_constant_in_x_for_small_weight() {
    let xs: Vec<Real> = SCATTERED.iter().map(|s| parse_real(s).unwrap()).collect();
    let jobs: Vec<(i64, u32)> = discriminants(50).into_iter().flat_map(|d| [(d, 2), (d, 4)]).collect();
    jobs.par_iter().for_each(|&(d, k)| {
        let base = sum(d, k, &xs[0], Representation::SimpleGamma);
        for x in &xs[1..] {
            let v = sum(d, k, x, Representation::SimpleGamma);
            assert!(close(&v, &base, 1e-8), "D={d} k={k} x={x}: {v} vs {base}");
        }
    });
}

#[test]
fn weight_six_is_not_constant() {
    let a = sum(5, 6, &parse_real("1/pi").unwrap(), Representation::SimpleGamma);
    let b = sum(5, 6, &parse_real("1/e").unwrap(), Representation::SimpleGamma);
    assert!((a.to_f64() - b.to_f64()).abs() > 1e-4);
}

#[test]
fn failing_terms_cancel() {
    for s in ["1/pi", "sqrt(7)", "-4/9"] {
        let x = parse_real(s).unwrap();
        for d in [5, 12, 17, 40] {
            for k in [2, 4] {
                let c = sum(d, k, &x, Representation::SimpleGamma);
                let u = sum(d, k, &x, Representation::SimpleGammaUnconditioned);
                assert!(close(&c, &u, 1e-9), "D={d} k={k} x={s}");
            }
        }
    }
}

#[test]
fn included_terms_are_positive_and_decay() {
    for s in ["1/pi", "1/e", "sqrt(2)"] {
        let x = parse_real_with_precision(s, 1024).unwrap();
        let steps = plus_cf(&x, 60).unwrap();
        for d in [5, 8, 21, 33] {
            let norm = enumerate_forms(d, FormKind::Simple)
                .unwrap()
                .iter()
                .map(|q| rational_to_f64(&BigRational::from_integer(q.norm1())))
                .fold(0.0, f64::max);
            let req = SumRequest::new(SumScope::Discriminant(d.into()), 2, x.clone(), Representation::SimpleGamma)
                .with_ledger();
            let res = a_sum_stream(&req).unwrap();
            for row in res.ledger.iter().filter(|r| !r.closing) {
                let v = row.value.to_f64();
                if row.included {
                    assert!(row.value.sign().unwrap().is_gt(), "D={d} x={s} step {}", row.step);
                }
                // |Q_hom(delta_{i-1}, delta_i)| <= |Q|_1 delta_{i-1}^2
                let dp = steps[row.step].delta_prev.to_f64();
                assert!(v.abs() <= norm * dp * dp * (1.0 + 1e-9), "D={d} x={s} step {}", row.step);
            }
        }
    }
}
