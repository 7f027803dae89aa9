//! The four example differential fields with their operators and orders.

use crate::diffop::{build_p, DerivationSpec, OperatorSpec};
use crate::poly::{parse_fraction, parse_poly, MonomialOrder, Poly};

/// A differential field together with a chosen v and monomial order.
#[derive(Debug, Clone)]
pub struct Field {
    pub name: &'static str,
    pub op: OperatorSpec,
    pub order: MonomialOrder,
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

fn make(name: &'static str, derivs: &[&str], v: &str, order: MonomialOrder) -> Field {
    let nm = names(derivs.len());
    let d: Vec<(Poly, Poly)> = derivs.iter().map(|s| parse_fraction(s, &nm).expect("valid derivative")).collect();
    let deriv = DerivationSpec::new(nm.clone(), d).expect("valid derivation");
    let v = parse_poly(v, &nm).expect("valid v");
    Field { name, op: build_p(&deriv, &v).expect("valid operator"), order }
}

/// x and tan(x), with v = tan(x)² + 1 and lex order t1 > t2.
pub fn tan() -> Field {
    make("tan", &["1", "t2^2+1"], "t2^2+1", MonomialOrder::lex(2))
}

/// x, ln(x), tan(ln(x)), with v = t3² + 1 and lex order t3 > t2 > t1.
pub fn tanln() -> Field {
    make("tanln", &["1", "1/t1", "(t3^2+1)/t1"], "t3^2+1", MonomialOrder::from_int_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]))
}

pub fn airy_order() -> MonomialOrder {
    MonomialOrder::from_int_rows(&[&[0, 1, 1], &[2, 0, 1], &[0, 0, 1]])
}

/// x, Ai(x), Ai'(x), with v = 1.
pub fn airy() -> Field {
    make("airy", &["1", "t3", "t1*t2"], "1", airy_order())
}

pub fn cei_order_v1() -> MonomialOrder {
    MonomialOrder::from_int_rows(&[&[0, 1, 1], &[0, 0, 1], &[1, 0, 0]])
}

pub fn cei_order_v2() -> MonomialOrder {
    MonomialOrder::from_int_rows(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]])
}

const CEI_DERIVS: [&str; 3] = ["1", "(t3-(1-t1^2)*t2)/(t1*(1-t1^2))", "(t3-t2)/t1"];

/// x, K(x), E(x) (complete elliptic integrals), v = 1, first block order.
pub fn cei_v1() -> Field {
    make("cei-block1", &CEI_DERIVS, "1", cei_order_v1())
}

/// Same field under the second block order.
pub fn cei_v2() -> Field {
    make("cei-block2", &CEI_DERIVS, "1", cei_order_v2())
}

pub fn by_name(name: &str) -> Option<Field> {
    match name {
        "tan" => Some(tan()),
        "tanln" => Some(tanln()),
        "airy" => Some(airy()),
        "cei-block1" | "cei" => Some(cei_v1()),
        "cei-block2" => Some(cei_v2()),
        _ => None,
    }
}
