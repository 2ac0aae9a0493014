use num_bigint::BigInt;
use proptest::prelude::*;
use quadperiod::qforms::{
    class_decomposition, enumerate_forms, minus_purely_periodic, reduce_to_class, reduced_simple_bijection,
    simple_purely_periodic, Direction, FormKind, Group, IntPoly, QForm,
};
use quadperiod::Mat2;

fn discriminants(max: i64) -> Vec<i64> {
    (2..=max)
        .filter(|d| d % 4 == 0 || d % 4 == 1)
        .filter(|&d| {
            let s = (d as f64).sqrt() as i64;
            (s - 1..=s + 1).all(|r| r * r != d)
        })
        .collect()
}

#[test]
fn predicates_agree_and_counts_match() {
    for d in discriminants(200) {
        let simple = enumerate_forms(d, FormKind::Simple).unwrap();
        let reduced = enumerate_forms(d, FormKind::Reduced).unwrap();
        assert_eq!(simple.len(), 2 * reduced.len(), "D = {d}");
        for q in &simple {
            assert_eq!(q.disc(), BigInt::from(d));
            assert!(q.is_simple_by_roots().unwrap());
            assert!(!q.is_reduced_by_roots().unwrap());
        }
        for q in &reduced {
            assert!(q.is_reduced_by_roots().unwrap());
            assert!(!q.is_simple_by_roots().unwrap());
        }
        let mut image: Vec<QForm> = reduced
            .iter()
            .map(|r| reduced_simple_bijection(r, Direction::Forward).unwrap())
            .collect();
        image.sort();
        let mut target: Vec<QForm> = simple
            .iter()
            .filter(|q| &q.a + &q.b + &q.c > BigInt::from(0))
            .cloned()
            .collect();
        target.sort();
        assert_eq!(image, target, "D = {d}");
    }
}

#[test]
fn cycles_partition_the_forms() {
    for d in discriminants(200) {
        let db = BigInt::from(d);
        let g1 = class_decomposition(&db, Group::Gamma1).unwrap();
        let g = class_decomposition(&db, Group::Gamma).unwrap();
        let mut seen: Vec<QForm> = g1.iter().flat_map(|c| c.simple_cycle.clone()).collect();
        seen.sort();
        assert_eq!(seen, enumerate_forms(d, FormKind::Simple).unwrap());
        let mut seen: Vec<QForm> = g1.iter().flat_map(|c| c.reduced_cycle.clone()).collect();
        seen.sort();
        assert_eq!(seen, enumerate_forms(d, FormKind::Reduced).unwrap());
        // Gamma-classes coarsen Gamma_1-classes
        for c in &g1 {
            assert_eq!(g.iter().filter(|k| k.contains(&c.simple_cycle[0])).count(), 1);
        }
        let total: usize = g.iter().map(|c| c.simple_members().count()).sum();
        assert_eq!(total, seen.len() * 2);
    }
}

#[test]
fn pure_periodicity_characterizes_reduced_and_simple() {
    for d in discriminants(100) {
        let mut forms = enumerate_forms(d, FormKind::Simple).unwrap();
        forms.extend(enumerate_forms(d, FormKind::Reduced).unwrap());
        for a in -8i64..=8 {
            for b in -12i64..=12 {
                if a == 0 || (b * b - d) % (4 * a) != 0 {
                    continue;
                }
                forms.push(QForm::new(a, b, (b * b - d) / (4 * a)));
            }
        }
        for q in &forms {
            assert_eq!(minus_purely_periodic(q).unwrap(), q.is_reduced(), "{q}");
            assert_eq!(simple_purely_periodic(q).unwrap(), q.is_simple(), "{q}");
        }
    }
}

fn small_mat() -> impl Strategy<Value = Mat2> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
        .prop_filter("unimodular", |(r, s, t, u)| (r * u - s * t).abs() == 1)
        .prop_map(|(r, s, t, u)| Mat2::new(r, s, t, u))
}

fn small_form() -> impl Strategy<Value = QForm> {
    (-20i64..=20, -20i64..=20, -20i64..=20)
        .prop_filter("not all zero", |(a, b, c)| (*a, *b, *c) != (0, 0, 0))
        .prop_map(|(a, b, c)| QForm::new(a, b, c))
}

proptest! {
    #[test]
    fn action_laws(q in small_form(), g in small_mat(), h in small_mat()) {
        prop_assert_eq!(q.act(&Mat2::identity()), q.clone());
        prop_assert_eq!(q.act(&g).act(&h), q.act(&g.mul(&h)));
        prop_assert_eq!(q.act(&g).disc(), q.disc());
        prop_assert_eq!(q.to_poly().slash(&g, 2).unwrap(), q.act(&g).to_poly());
    }

    #[test]
    fn slash_composes(c in prop::collection::vec(-9i64..=9, 0..7), g in small_mat(), h in small_mat()) {
        let p = IntPoly::from_i64(&c);
        let lhs = p.slash(&g, 6).unwrap().slash(&h, 6).unwrap();
        prop_assert_eq!(lhs, p.slash(&g.mul(&h), 6).unwrap());
    }

    #[test]
    fn quartic_invariants_are_invariant(c in prop::collection::vec(-9i64..=9, 5), g in small_mat()) {
        prop_assume!(c[4] != 0);
        let p = IntPoly::from_i64(&c);
        let q = p.slash(&g, 4).unwrap();
        prop_assume!(q.degree() == Some(4));
        let (i, j, _) = p.quartic_invariants().unwrap();
        let (i2, j2, _) = q.quartic_invariants().unwrap();
        prop_assert_eq!(i, i2);
        prop_assert_eq!(j, j2);
    }

    #[test]
    fn reduction_lands_on_the_cycle(q in small_form()) {
        let d = q.disc();
        prop_assume!(quadperiod::qforms::check_discriminant(&d).is_ok());
        prop_assume!(d < BigInt::from(400));
        let (cls, g) = reduce_to_class(&q).unwrap();
        prop_assert!(cls.simple_cycle.contains(&q.act(&g)));
        prop_assert_eq!(g.det(), BigInt::from(1));
    }
}
