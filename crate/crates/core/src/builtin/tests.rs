use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diffop::OperatorSpec;
use crate::poly::{parse_laurent, parse_param, parse_poly, qi, qr, LaurentPoly, ParamPoly, Poly};
use crate::rules::critical_pair;

fn t3() -> Vec<String> {
    (1..=3).map(|i| format!("t{i}")).collect()
}

fn lp(s: &str) -> LaurentPoly {
    parse_laurent(s, &t3(), 3).unwrap()
}

fn px(s: &str) -> ParamPoly {
    parse_param(s, 3).unwrap()
}

fn pp(s: &str) -> Poly {
    parse_poly(s, &t3()).unwrap()
}

#[test]
fn airy_odd_coefficients() {
    assert_eq!(airy_c(1, 1), qi(1));
    assert_eq!(airy_c(3, 1), qi(1));
    assert_eq!(airy_c(3, 2), qr(-2, 3));
    let r = airy_rules(1);
    assert_eq!(r.p(), &lp("1+(x1-1)*t1^-2*t2^-1*t3"));
    assert_eq!(r.q(), &lp("t1^-1*t2^-1*t3"));
    assert!(r.b().eval(&[1, 1, 0]) && !r.b().eval(&[0, 1, 0]) && !r.b().eval(&[1, 1, 1]));
}

#[test]
fn airy_even_coefficients() {
    assert_eq!(airy_b0(2), px("x1+1/2"));
    assert_eq!(airy_b(2), vec![px("1/2"), px("1/2*x1")]);
    let r = airy_rules(2);
    assert_eq!(r.q(), &lp("1/2*(t1-t2^-2*t3^2)+1/2*x1*t1^-1*t2^-1*t3"));
    assert_eq!(r.p(), &lp("(x1+1/2)+1/2*x1*(x1-1)*t1^-2*t2^-1*t3"));
    // j = 0 is the third basic rule.
    let r0 = airy_rules(0);
    assert_eq!(r0.p(), &lp("x1+1"));
    assert_eq!(r0.q(), &lp("t1"));
}

#[test]
fn airy_determinant() {
    for j in (0..=12).step_by(2) {
        let det = crate::poly::linalg::bareiss_det(&airy_matrix(j));
        assert_eq!(det, airy_b0(j).scale(&double_factorial(j as i64)), "j = {j}");
    }
}

#[test]
fn double_factorial_identities() {
    for n in 0..=20i64 {
        let term = |m: i64| binomial(n, m) * double_factorial(2 * m - 1) * double_factorial(2 * n - 2 * m - 1);
        let s: crate::poly::Q = (0..=n).map(term).sum();
        let w: crate::poly::Q = (0..=n).map(|m| qi(m) * term(m)).sum();
        assert_eq!(s, double_factorial(2 * n));
        assert_eq!(w, qr(n, 2) * double_factorial(2 * n));
    }
}

#[test]
fn cei_v1_members() {
    let r0 = cei_rules_v1(0);
    assert_eq!(r0.p(), &lp("(2-x1)+(x1-2)*t1^-2"));
    assert_eq!(r0.q(), &lp("t1^-2"));
    let b = cei_b(1);
    assert_eq!(b[1][1], px("x1-3"));
    let a = cei_a(2, &cei_b(2));
    assert_eq!(a[3], px("-1/2*(x1-4)^3"));
    let r2 = cei_rules_v1(2);
    assert!(r2.b().eval(&[6, 2, 0]) && !r2.b().eval(&[5, 2, 0]));
}

#[test]
fn cei_v2_members() {
    let r1 = cei_rules_v2(1);
    assert_eq!(r1.p(), &lp("x1"));
    assert_eq!(r1.q(), &lp("t2*t3^-1"));
    assert!(r1.b().eval(&[1, 0, 1]) && !r1.b().eval(&[0, 0, 1]) && !r1.b().eval(&[1, 1, 1]));
    let r2 = cei_rules_v2(2);
    assert_eq!(r2.p(), &lp("(x1+1)-(1/2*x1+1)*t2*t3^-1"));
    let g = cei_rules_v2(0);
    assert_eq!(g.q(), &lp("t1^-2"));
    assert!(g.b().eval(&[2, 0, 1]) && !g.b().eval(&[2, 0, 0]) && !g.b().eval(&[1, 0, 0]));
}

fn op_for(kind: FamilyKind) -> OperatorSpec {
    match kind {
        FamilyKind::Airy => fields::airy().op,
        FamilyKind::CeiV1 => fields::cei_v1().op,
        FamilyKind::CeiV2 => fields::cei_v2().op,
    }
}

#[test]
fn members_are_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kind in [FamilyKind::Airy, FamilyKind::CeiV1, FamilyKind::CeiV2] {
        let fam = RuleFamily::new(kind);
        let op = op_for(kind);
        for r in fam.base_rules() {
            r.ci.check_sampled(&op, 20, &mut rng).unwrap();
        }
        for j in fam.first_index()..=6 {
            fam.member(j).ci.check_sampled(&op, 20, &mut rng).unwrap();
        }
    }
}

#[test]
fn no_critical_pairs() {
    for kind in [FamilyKind::Airy, FamilyKind::CeiV1, FamilyKind::CeiV2] {
        let fam = RuleFamily::new(kind);
        let mut all = fam.base_rules();
        all.extend((fam.first_index()..=5).map(|j| fam.member(j)));
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!critical_pair(a, b), "{} {:?} {:?}", fam.name(), a, b);
            }
        }
    }
}

#[test]
fn dispatch() {
    let sys = builtin_system("airy").unwrap();
    assert_eq!(sys.rule_for(&[0, 0, 2]).unwrap().id, 1);
    assert_eq!(sys.rule_for(&[1, 2, 0]).unwrap().id, FAMILY_ID + 2);
    assert!(sys.rule_for(&[0, 1, 0]).is_none());
    assert!(builtin_system("nope").is_none());
}

#[test]
fn hard_instance_small() {
    let (f, g) = airy_hard_instance(1, 0, 3).unwrap();
    assert_eq!(f, pp("t2^3-3/2*t3^3"));
    assert_eq!(g, pp("t1*t2^3-3/2*t2*t3^2"));
    let (f, g) = airy_hard_instance(0, 2, 3).unwrap();
    assert_eq!(g, pp("t1^2*t2^3"));
    assert_eq!(fields::airy().op.apply(&g).unwrap(), f);
    assert!(airy_hard_instance(2, 0, 4).is_err());
}

#[test]
fn hard_instances_integrate() {
    let op = fields::airy().op;
    for m in 0..=5i64 {
        for n in 0..=5 - m {
            for d in [2 * m + 1, 2 * m + 3] {
                let (f, g) = airy_hard_instance(m, n, d).unwrap();
                assert_eq!(op.apply(&g).unwrap(), f, "(m,n,d) = ({m},{n},{d})");
                assert_eq!(f.degree_in(0), Some(n));
                assert_eq!(g.degree_in(0), Some(n + m));
            }
        }
    }
}
