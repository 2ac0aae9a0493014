use num_rational::BigRational;
use proptest::prelude::*;
use quadperiod::modsums::{a_sum_direct_rational, p_gamma_sum};
use quadperiod::periods::{
    cocycle_check, even_odd_split, kronecker_chi, l_value, period_polynomial, PeriodScope,
};
use quadperiod::qforms::{class_decomposition, Group, IntPoly};
use quadperiod::real::{parse_real, rational_to_f64};
use quadperiod::verify::discriminants;
use quadperiod::{Mat2, Real};
use rayon::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn u_has_order_three_and_su2_is_t_inverse() {
    let u = Mat2::u();
    assert!(u.pow(3).is_identity_pgl());
    assert!(Mat2::s().mul(&u).mul(&u).pgl_eq(&Mat2::t_pow(&(-1).into())));
}

/// `P_{k,A}` is a cocycle exactly when `-A = A`; `P_{k,A} + P_{k,-A}` always is.
#[test]
fn class_polynomials_satisfy_the_cocycle_conditions() {
    for d in discriminants(60) {
        for group in [Group::Gamma, Group::Gamma1] {
            for c in class_decomposition(&d.into(), group).unwrap() {
                let neg = c.negated().unwrap();
                for k in [2, 4, 6] {
                    let p = period_polynomial(&PeriodScope::Class(c.clone()), k).unwrap();
                    let q = period_polynomial(&PeriodScope::Class(neg.clone()), k).unwrap();
                    let own = cocycle_check(&p.poly, p.slash_degree()).unwrap().pass;
                    assert_eq!(own, neg == c, "D={d} {group:?} k={k}: {}", p.poly);
                    let both = cocycle_check(&p.poly.add(&q.poly), p.slash_degree()).unwrap();
                    assert!(neg == c || both.pass, "D={d} {group:?} k={k}");
                }
            }
        }
        for c in class_decomposition(&d.into(), Group::Gamma1).unwrap() {
            for k in [2, 3, 4, 5] {
                let p = period_polynomial(&PeriodScope::Gamma1Symmetrized(c.clone()), k).unwrap();
                assert!(cocycle_check(&p.poly, p.slash_degree()).unwrap().pass, "D={d} k={k}");
            }
        }
    }
}

#[test]
fn p_gamma_is_the_l_value_constant() {
    let xs: Vec<Real> = ["1/pi", "sqrt(2)", "3/7", "-5/3", "1/e"]
        .iter()
        .map(|s| parse_real(s).unwrap())
        .collect();
    discriminants(30).par_iter().for_each(|&d| {
        for (k, expect) in [(2, l_value(d, -1).unwrap() * rat(-5, 1)), (4, l_value(d, -3).unwrap())] {
            let p = period_polynomial(&PeriodScope::Discriminant(d.into()), k).unwrap();
            for x in &xs {
                let v = p_gamma_sum(&p.poly, p.slash_degree(), x, Group::Gamma, 1e-11, 5000, false).unwrap();
                let diff = v.value.sub(&Real::from(expect.clone())).abs_upper();
                assert!(rational_to_f64(&diff) <= 1e-8, "D={d} k={k} x={x}");
            }
        }
    });
}

/// `A|(1-S) = -P`: `A(x) - x^(2k-2) A(-1/x) = -P(x)` exactly at rational `x`.
#[test]
fn sums_and_polynomials_are_linked_by_s() {
    for d in discriminants(40) {
        for k in [2u32, 4, 6] {
            let p = period_polynomial(&PeriodScope::Discriminant(d.into()), k).unwrap();
            for x in [rat(2, 5), rat(-7, 3), rat(11, 4)] {
                let a = a_sum_direct_rational(&d.into(), k, &x).unwrap();
                let inv = -x.recip();
                let b = a_sum_direct_rational(&d.into(), k, &inv).unwrap();
                let xd = num_traits::pow(x.clone(), 2 * k as usize - 2);
                let px = p.poly.eval_rational(&x);
                assert_eq!(a - xd * b, -px, "D={d} k={k} x={x}");
            }
        }
    }
}

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..20, 0..9).prop_map(|c| IntPoly::from_i64(&c))
}

proptest! {
    #[test]
    fn split_recombines(p in poly()) {
        let (e, o) = even_odd_split(&p);
        prop_assert_eq!(e.add(&o), p);
        prop_assert!(e.is_even());
        prop_assert!(o.reflect() == o.neg());
    }

    #[test]
    fn cocycle_residuals_are_linear(p in poly(), q in poly(), a in -5i64..5) {
        let d = 8;
        let lhs = cocycle_check(&p.scale(&a.into()).add(&q), d).unwrap();
        let (rp, rq) = (cocycle_check(&p, d).unwrap(), cocycle_check(&q, d).unwrap());
        prop_assert_eq!(lhs.residual_s, rp.residual_s.scale(&a.into()).add(&rq.residual_s));
        prop_assert_eq!(lhs.residual_u, rp.residual_u.scale(&a.into()).add(&rq.residual_u));
    }

    #[test]
    fn kronecker_is_multiplicative_and_periodic(
        d in prop::sample::select(discriminants(120)),
        m in 1u64..400,
        n in 1u64..400,
    ) {
        let chi = |t: u64| kronecker_chi(d, t).unwrap();
        prop_assert_eq!(chi(m * n), chi(m) * chi(n));
        prop_assert_eq!(chi(m + d as u64), chi(m));
    }
}
