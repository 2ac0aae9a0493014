use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use quadperiod::real::RealKind;
use quadperiod::{Interval, Real};

#[derive(Clone, Debug)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![Just(Op::Add), Just(Op::Sub), Just(Op::Mul), Just(Op::Div)]
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-500i64..500, 1i64..60).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn apply(op: &Op, a: &Real, b: &Real) -> Option<Real> {
    match op {
        Op::Add => Some(a.add(b)),
        Op::Sub => Some(a.sub(b)),
        Op::Mul => Some(a.mul(b)),
        Op::Div => a.div(b).ok(),
    }
}

fn apply_rational(op: &Op, a: &BigRational, b: &BigRational) -> Option<BigRational> {
    match op {
        Op::Add => Some(a + b),
        Op::Sub => Some(a - b),
        Op::Mul => Some(a * b),
        Op::Div if b == &BigRational::from_integer(0.into()) => None,
        Op::Div => Some(a / b),
    }
}

proptest! {
    #[test]
    fn same_field_arithmetic_stays_exact(
        start in (-20i64..20, -9i64..9, 1i64..9),
        chain in prop::collection::vec((op(), -20i64..20, -9i64..9, 1i64..9), 1..6),
        d in prop::sample::select(vec![2i64, 3, 5, 7, 13]),
    ) {
        let mut x = Real::surd(start.0, start.1, start.2, d).unwrap();
        for (o, p, q, r) in &chain {
            let y = Real::surd(*p, *q, *r, d).unwrap();
            if let Some(z) = apply(o, &x, &y) {
                x = z;
            }
            prop_assert_ne!(x.kind(), RealKind::Interval);
        }
    }

    #[test]
    fn intervals_enclose_rational_results(
        start in rational(),
        chain in prop::collection::vec((op(), rational()), 1..6),
        prec in 24u32..128,
    ) {
        let mut exact = start.clone();
        let mut iv = Real::from(Interval::from_rational(&start, prec));
        for (o, r) in &chain {
            let (Some(e), Some(i)) = (
                apply_rational(o, &exact, r),
                apply(o, &iv, &Real::from(Interval::from_rational(r, prec))),
            ) else {
                continue;
            };
            exact = e;
            iv = i;
            match &iv {
                Real::Interval(v) => prop_assert!(v.contains_rational(&exact)),
                other => prop_assert!(false, "demoted to {other:?}"),
            }
        }
    }

    #[test]
    fn floor_and_ceil_are_coherent(p in -300i64..300, q in -40i64..40, r in 1i64..30, d in 2i64..40) {
        let x = Real::surd(p, q, r, d).unwrap();
        prop_assert_eq!(x.ceil().unwrap(), -x.neg().floor().unwrap());
        let f = x.floor().unwrap();
        prop_assert!(Real::from(f.clone()).cmp_real(&x).unwrap().is_le());
        prop_assert!(Real::from(f + BigInt::from(1)).cmp_real(&x).unwrap().is_gt());
        let iv = x.clone().into_interval(200);
        if let (Ok(a), Ok(b)) = (iv.ceil(), iv.neg().floor()) {
            prop_assert_eq!(a, -b);
        }
    }

    #[test]
    fn conjugation(p in -50i64..50, q in 1i64..20, r in 1i64..20, d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10])) {
        let x = Real::surd(p, q, r, d).unwrap();
        let c = x.conjugate().unwrap();
        prop_assert_eq!(&c, &Real::surd(p, -q, r, d).unwrap());
        prop_assert_eq!(x.mul(&c).kind(), RealKind::Rational);
        prop_assert_eq!(x.add(&c).kind(), RealKind::Rational);
    }
}
