use proptest::prelude::*;

use super::*;
use crate::builtin::fields;
use crate::poly::{parse_laurent, parse_poly, qi};

fn nm(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

fn pp(s: &str, n: usize) -> Poly {
    parse_poly(s, &nm(n)).unwrap()
}

#[test]
fn tilde_and_den() {
    let f = fields::tan();
    assert_eq!(f.op.deriv.den_d(), &pp("1", 2));
    let c = fields::cei_v1();
    assert_eq!(c.op.deriv.den_d(), &pp("t1*(1-t1^2)", 3));
    assert_eq!(c.op.deriv.tilde()[1], pp("t3-(1-t1^2)*t2", 3));
    let t = fields::tanln();
    assert_eq!(t.op.deriv.den_d(), &pp("t1", 3));
}

#[test]
fn symbols_of_example_operators() {
    let tn = nm(3);
    assert_eq!(fields::tan().op.p, parse_laurent("x1*t1^-1 + (x2-2)*t2 + x2*t2^-1", &nm(2), 2).unwrap());
    assert_eq!(fields::airy().op.p, parse_laurent("x1*t1^-1 + x2*t2^-1*t3 + x3*t1*t2*t3^-1", &tn, 3).unwrap());
    assert_eq!(fields::tanln().op.p, parse_laurent("x1 + x2*t2^-1 + x3*(t3^2+1)*t3^-1 - 2*t3", &tn, 3).unwrap());
    assert_eq!(
        fields::cei_v1().op.p,
        parse_laurent("(x1-x2+x3)*(1-t1^2) + x3*t1^2*t2*t3^-1 + x2*t2^-1*t3 - x3*t2*t3^-1", &tn, 3).unwrap()
    );
}

#[test]
fn apply_l_examples() {
    let tan = fields::tan();
    assert_eq!(tan.op.apply(&pp("t1", 2)).unwrap(), pp("1 - 2*t1*t2", 2));
    let airy = fields::airy();
    assert_eq!(airy.op.apply(&pp("t2*t3", 3)).unwrap(), pp("t3^2 + t1*t2^2", 3));
    assert!(airy.op.apply(&Poly::zero(3)).unwrap().is_zero());
    for f in [fields::tan(), fields::tanln(), fields::airy(), fields::cei_v1()] {
        assert!(f.op.apply(&f.op.v).unwrap().is_zero(), "{}", f.name);
    }
}

#[test]
fn derivation_of_fractions() {
    let tan = fields::tan();
    let d = apply_derivation_rational(&tan.op.deriv, &pp("t1^2*t2^2+2*t1*t2+t1^2+1", 2), &pp("4*(t2^2+1)", 2)).unwrap();
    assert!(fractions_equal(&d, &(pp("t1", 2), pp("t2^2+1", 2))));
    let c = apply_derivation_rational(&tan.op.deriv, &pp("7", 2), &pp("1", 2)).unwrap();
    assert!(c.0.is_zero());
    let airy = fields::airy();
    let u = pp("1/3*t1*t3^2 + 2/3*t2*t3 - 1/3*t1^2*t2^2", 3);
    let d = apply_derivation_rational(&airy.op.deriv, &u, &pp("1", 3)).unwrap();
    assert!(fractions_equal(&d, &(pp("t3^2", 3), pp("1", 3))));
}

#[test]
fn rhs_conversion() {
    let tan = fields::tan();
    assert_eq!(tan.op.integrand_to_rhs(&pp("t1", 2), &pp("t2^2+1", 2)).unwrap(), pp("t1", 2));
    let airy = fields::airy();
    assert_eq!(airy.op.integrand_to_rhs(&pp("t3^2", 3), &pp("1", 3)).unwrap(), pp("t3^2", 3));
    let bare = build_p(&tan.op.deriv, &pp("1", 2)).unwrap();
    assert_eq!(bare.integrand_to_rhs(&pp("t1", 2), &pp("t2^2+1", 2)), Err(DiffError::DenominatorInsufficient));
}

#[test]
fn heuristic_bounds_examples() {
    let airy = fields::airy();
    let u = pp("-1/3*t1^2*t2^2 + 1/3*t1*t3^2 + 2/3*t2*t3", 3);
    let b = heuristic_bounds(&pp("t3^2", 3), &pp("1", 3), &airy.op.v, &airy.op.deriv).unwrap();
    assert_eq!(b.total_den, 3);
    assert_eq!(b.violated_by(&u), [true; 4]);
    let tan = fields::tan();
    let u = pp("1/4*t1^2*t2^2 + 1/2*t1*t2 + 1/4*t1^2 + 1/4", 2);
    let b = heuristic_bounds(&pp("t1", 2), &pp("t2^2+1", 2), &tan.op.v, &tan.op.deriv).unwrap();
    assert_eq!(b.violated_by(&u), [false, true, true, false]);
}

#[test]
fn homogeneity() {
    let w = homogeneous_weights(&fields::airy().op.p);
    assert_eq!(w.len(), 1);
    assert!(w[0][0] == qi(0) && w[0][1] == w[0][2] && w[0][1] != qi(0));
    assert!(homogeneous_weights(&fields::tan().op.p).is_empty());
    let mono = parse_laurent("x1*t1*t2^-1", &nm(2), 2).unwrap();
    assert_eq!(homogeneous_weights(&mono).len(), 2);
    assert!(is_homogeneous(&fields::cei_v1().op.p, &[qi(0), qi(1), qi(1)]));
    assert!(!is_homogeneous(&fields::tan().op.p, &[qi(0), qi(1)]));
}

fn small_poly(n: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((proptest::collection::vec(0i64..3, n), -3i64..=3), 0..5)
        .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(e, c)| (e, qi(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn l_matches_quotient_rule(u in small_poly(3), which in 0usize..3) {
        let f = [fields::tanln(), fields::airy(), fields::cei_v1()][which].clone();
        let lu = f.op.apply(&u).unwrap();
        prop_assert_eq!(&lu, &f.op.apply_direct(&u));
        // L(u) = den(∂)·(v²/g)·∂(u/v)
        let d = apply_derivation_rational(&f.op.deriv, &u, &f.op.v).unwrap();
        let scale = &(&f.op.v * &f.op.v_g) * f.op.deriv.den_d();
        prop_assert!(fractions_equal(&(lu, Poly::one(3)), &(&d.0 * &scale, d.1)));
    }

    #[test]
    fn l_is_linear(a in small_poly(2), b in small_poly(2), k in -3i64..=3) {
        let f = fields::tan();
        let lhs = f.op.apply(&(&a.scale_q(&qi(k)) + &b)).unwrap();
        let rhs = &f.op.apply(&a).unwrap().scale_q(&qi(k)) + &f.op.apply(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_degree_shift(c in proptest::collection::vec(-3i64..=3, 4), d in 0i64..4) {
        // Airy p is (0,1,1)-homogeneous of degree 0.
        let f = fields::airy();
        let w = [qi(0), qi(1), qi(1)];
        let mut u = Poly::zero(3);
        for (k, ck) in c.iter().enumerate() {
            let k = k as i64 % (d + 1);
            u = &u + &Poly::monomial(vec![k, d - k, k], qi(*ck));
        }
        let lu = f.op.apply(&u).unwrap();
        prop_assume!(!lu.is_zero());
        prop_assert_eq!(lu.deg_w(&w), u.deg_w(&w));
    }
}
