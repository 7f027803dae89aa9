use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::builtin::{builtin_system, fields, FamilyKind, RuleFamily};
use crate::engine::{normal_form, DEFAULT_STEP_BUDGET};
use crate::poly::{parse_poly, Poly};

fn w(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

fn at(phi: &DegreeBoundFn, x: Q) -> Ext {
    bound_eval(phi, &Ext::Fin(x))
}

fn fin(q: Q) -> Ext {
    Ext::Fin(q)
}

#[test]
fn from_systems() {
    let airy = builtin_system("airy").unwrap();
    for w2 in -1..=2 {
        let phi = bound_from_system(&airy, &w(&[2, w2, w2 + 1]), 8, Some(fin(qi(2)))).unwrap();
        assert_eq!(phi.as_affine(), Some((qi(1), qi(2))), "w2={w2}");
    }
    let cei1 = builtin_system("cei-block1").unwrap();
    let phi = bound_from_system(&cei1, &w(&[1, 0, 2]), 8, Some(fin(qi(-2)))).unwrap();
    assert_eq!(phi.as_affine(), Some((qi(1), qi(-2))));
    let cei2 = builtin_system("cei-block2").unwrap();
    let phi = bound_from_system(&cei2, &w(&[1, 1, 1]), 8, Some(fin(qi(0)))).unwrap();
    assert_eq!(phi.as_affine(), Some((qi(1), qi(0))));
    let phi = bound_from_system(&cei2, &w(&[1, -1, -1]), 8, Some(fin(qi(0)))).unwrap();
    assert_eq!(phi.as_affine(), Some((qi(1), qi(0))));
}

#[test]
fn from_system_errors() {
    let airy = builtin_system("airy").unwrap();
    assert!(matches!(bound_from_system(&airy, &w(&[2, 0, 1]), 4, None), Err(BoundError::TailNotAsserted(_))));
    assert!(matches!(
        bound_from_system(&airy, &w(&[2, 0, 1]), 4, Some(fin(qi(1)))),
        Err(BoundError::AssertionContradicted { .. })
    ));
    assert!(matches!(bound_from_system(&airy, &w(&[1, 0, 0]), 4, Some(fin(qi(2)))), Err(BoundError::Incompatible { .. })));
    assert!(matches!(bound_from_system(&airy, &w(&[1, 0]), 4, None), Err(BoundError::Dimension { .. })));
}

#[test]
fn family_members_have_expected_q_degrees() {
    let fam = RuleFamily::new(FamilyKind::Airy);
    for j in 1..=8 {
        let d = fam.member(j).q().deg_w(&w(&[2, 0, 1]));
        let want = if j % 2 == 0 { 2 } else { -1 };
        assert_eq!(d, fin(qi(want)), "j={j}");
    }
}

#[test]
fn homogeneous() {
    let airy = fields::airy().op.p;
    assert_eq!(bound_homogeneous(&airy, &w(&[0, 1, 1])).unwrap().as_affine(), Some((qi(1), qi(0))));
    let cei = fields::cei_v1().op.p;
    assert_eq!(bound_homogeneous(&cei, &w(&[0, 1, 1])).unwrap().as_affine(), Some((qi(1), qi(0))));
    let tan = fields::tan().op.p;
    assert_eq!(bound_homogeneous(&tan, &w(&[0, 1])), Err(BoundError::NotHomogeneous));
}

#[test]
fn compose() {
    let e = ComposeEntry { w: w(&[2, 2, 3]), phi: B::Affine(qi(1), qi(2)), lambda: qr(1, 2), c: qi(3) };
    let phi = bound_compose(std::slice::from_ref(&e), &w(&[1, 1, 1])).unwrap();
    assert_eq!(phi.as_affine(), Some((qr(3, 2), qi(1))));
    let id = ComposeEntry { w: w(&[1, 1, 1]), phi: B::Affine(qi(1), qi(-2)), lambda: qi(1), c: qi(1) };
    assert_eq!(bound_compose(&[id], &w(&[1, 1, 1])).unwrap().as_affine(), Some((qi(1), qi(-2))));
    assert_eq!(bound_compose(std::slice::from_ref(&e), &w(&[2, 1, 1])), Err(BoundError::WeightCover(0)));
    let small_c = ComposeEntry { c: qi(2), ..e.clone() };
    assert_eq!(bound_compose(&[small_c], &w(&[1, 1, 1])), Err(BoundError::DegreeScale { entry: 0, j: 2 }));
    let neg = ComposeEntry { phi: B::Affine(qi(-1), qi(0)), ..e };
    assert_eq!(bound_compose(&[neg], &w(&[1, 1, 1])), Err(BoundError::NotMonotone(0)));
    let r = bound_rescale(&w(&[2, 2, 3]), &B::Affine(qi(1), qi(2)), &w(&[1, 1, 1])).unwrap();
    assert_eq!(r.as_affine(), Some((qr(3, 2), qi(1))));
}

#[test]
fn builtins() {
    let (_, total) = builtin_bound("airy-total").unwrap();
    assert_eq!(at(&total, qi(2)), fin(qi(4)));
    assert_eq!(at(&total, qi(3)), fin(qi(5)));
    assert_eq!(total.to_prefix(), "(sum (floor 3/2 0) (const 1))");
    let (_, c2) = builtin_bound("cei2-total").unwrap();
    assert_eq!(at(&c2, qi(1)), Ext::NegInf);
    assert_eq!(at(&c2, qi(2)), fin(qi(2)));
    assert_eq!(at(&c2, qi(5)), fin(qi(4)));
    let (_, a) = builtin_bound("airy-w2m10").unwrap();
    assert_eq!(at(&a, qi(-3)), fin(qi(-4)));
    assert_eq!(at(&a, qi(-2)), fin(qi(0)));
    assert_eq!(at(&a, qi(3)), fin(qi(4)));
    let (_, c) = builtin_bound("cei2-w1m1m1").unwrap();
    assert_eq!(at(&c, qr(-1, 2)), fin(qi(-1)));
    assert_eq!(at(&c, qr(5, 2)), fin(qi(0)));
    assert_eq!(at(&c, qi(4)), fin(qi(2)));
    assert!(builtin_bound("nope").is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for name in BUILTIN_BOUNDS {
        let (wv, phi) = builtin_bound(name).unwrap();
        assert_eq!(wv.len(), 3);
        assert!(phi.is_monotone_sampled(100, 20, &mut rng), "{name}");
        assert_eq!(DegreeBoundFn::parse_prefix(&phi.to_prefix()).unwrap(), phi);
    }
}

#[test]
fn eval_conventions() {
    let phi = B::Affine(qr(3, 2), qi(1));
    assert_eq!(at(&phi, qi(2)), fin(qi(4)));
    assert_eq!(bound_eval(&phi, &Ext::NegInf), Ext::NegInf);
    assert_eq!(at(&B::FloorAffine(qr(3, 2), qi(1)), qi(3)), fin(qi(5)));
    assert_eq!(B::Affine(qi(1), qi(2)).to_string(), "x + 2");
    assert_eq!(B::Affine(qr(3, 2), qi(-1)).to_string(), "3/2*x - 1");
}

#[test]
fn example_integrals_attain_total_bound() {
    let sys = builtin_system("airy").unwrap();
    let names: Vec<String> = (1..=3).map(|i| format!("t{i}")).collect();
    let (_, phi) = builtin_bound("airy-total").unwrap();
    let cases = [
        ("t3^4", 7),
        ("4*t1*t3^4-7*t1*t2^3*t3", 8),
        ("24*t3^6-77*t2^3*t3^3", 10),
        ("1092*t1*t3^6-6449*t1*t2^3*t3^3", 11),
        ("8*t3^8-49*t2^6*t3^2", 13),
    ];
    for (f, d) in cases {
        let f = parse_poly(f, &names).unwrap();
        let nf = normal_form(&f, &sys, DEFAULT_STEP_BUDGET);
        assert!(nf.remainder.is_zero());
        assert_eq!(nf.preimage.total_degree(), Some(d));
        assert_eq!(at(&phi, qi(f.total_degree().unwrap())), fin(qi(d)));
    }
}

fn arb_u() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0i64..=4, 3), -4i64..=4), 1..5)
        .prop_map(|ts| Poly::from_terms(3, ts.into_iter().filter(|(e, _)| e.iter().sum::<i64>() <= 4).map(|(e, c)| (e, qi(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn airy_bounds_hold(u in arb_u()) {
        let f = fields::airy().op.apply(&u).unwrap();
        let g = normal_form(&f, &builtin_system("airy").unwrap(), DEFAULT_STEP_BUDGET).preimage;
        for w2 in -1..=2 {
            let wv = w(&[2, w2, w2 + 1]);
            prop_assert!(g.deg_w(&wv) <= bound_eval(&B::Affine(qi(1), qi(2)), &f.deg_w(&wv)));
        }
        for name in ["airy-w2m10", "airy-total"] {
            let (wv, phi) = builtin_bound(name).unwrap();
            prop_assert!(g.deg_w(&wv) <= bound_eval(&phi, &f.deg_w(&wv)), "{}", name);
        }
    }

    #[test]
    fn prefix_round_trip(a in -9i64..9, b in -9i64..9, d in 1i64..5) {
        let phi = B::Max(vec![
            B::Piecewise(vec![(Ext::NegInf, B::Const(Ext::NegInf)), (fin(qr(a, d)), B::FloorAffine(qr(b, d), qi(a)))]),
            B::Scale(qr(1, d), Box::new(B::Precompose(qi(d), Box::new(B::Affine(qi(a), qi(b)))))),
        ]);
        prop_assert_eq!(DegreeBoundFn::parse_prefix(&phi.to_prefix()).unwrap(), phi);
    }
}
