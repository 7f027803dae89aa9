//! Infinite complete reduction systems given by explicit rule families.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::fields;
use crate::conditions::{Condition, Rel};
use crate::poly::{div_exact, linalg, parse_laurent, qi, qr, LaurentPoly, MonomialOrder, ParamPoly, Q};
use crate::rules::{basic_rules, ConditionalIdentity, ReductionRule, ReductionSystem};

/// Rule ids at or above this value denote family members (id − FAMILY_ID = index).
pub const FAMILY_ID: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Airy,
    CeiV1,
    CeiV2,
}

/// A lazily generated, memoized family of reduction rules indexed by j ≥ 0.
pub struct RuleFamily {
    pub kind: FamilyKind,
    pub order: MonomialOrder,
    cache: Mutex<HashMap<usize, ReductionRule>>,
}

impl RuleFamily {
    pub fn new(kind: FamilyKind) -> Self {
        let order = match kind {
            FamilyKind::Airy => fields::airy_order(),
            FamilyKind::CeiV1 => fields::cei_order_v1(),
            FamilyKind::CeiV2 => fields::cei_order_v2(),
        };
        Self { kind, order, cache: Mutex::new(HashMap::new()) }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Airy => "airy",
            FamilyKind::CeiV1 => "cei-block1",
            FamilyKind::CeiV2 => "cei-block2",
        }
    }

    /// Smallest valid member index.
    pub fn first_index(&self) -> usize {
        match self.kind {
            FamilyKind::CeiV2 => 1,
            _ => 0,
        }
    }

    /// The generic rule(s) that accompany the family.
    pub fn base_rules(&self) -> Vec<ReductionRule> {
        match self.kind {
            FamilyKind::Airy => vec![first_basic(&fields::airy())],
            FamilyKind::CeiV1 => vec![first_basic(&fields::cei_v1())],
            FamilyKind::CeiV2 => {
                let mut r = cei_rules_v2(0);
                r.id = 1;
                vec![r]
            }
        }
    }

    /// Member j, generated on first use.
    pub fn member(&self, j: usize) -> ReductionRule {
        if let Some(r) = self.cache.lock().expect("cache lock").get(&j) {
            return r.clone();
        }
        let r = match self.kind {
            FamilyKind::Airy => airy_rules(j),
            FamilyKind::CeiV1 => cei_rules_v1(j),
            FamilyKind::CeiV2 => cei_rules_v2(j),
        };
        self.cache.lock().expect("cache lock").insert(j, r.clone());
        r
    }

    /// The index pinned by the member conditions for t^α, if any.
    pub fn index_for(&self, alpha: &[i64]) -> Option<usize> {
        match self.kind {
            FamilyKind::Airy | FamilyKind::CeiV1 => (alpha[2] == 0).then_some(alpha[1] as usize),
            FamilyKind::CeiV2 => (alpha[2] >= 1 && alpha[1] == alpha[0] + alpha[2] - 2).then_some(alpha[2] as usize),
        }
    }

    /// The member able to reduce t^α.
    pub fn rule_for(&self, alpha: &[i64]) -> Option<ReductionRule> {
        let r = self.member(self.index_for(alpha)?);
        r.applies_to(alpha).then_some(r)
    }

    /// Members whose condition holds at α; dispatch pins at most one.
    pub fn matching_rules(&self, alpha: &[i64]) -> Vec<ReductionRule> {
        self.rule_for(alpha).into_iter().collect()
    }
}

fn first_basic(f: &fields::Field) -> ReductionRule {
    basic_rules(&f.op, &f.order).rules.remove(0)
}

fn mono(e: [i64; 3], c: ParamPoly) -> LaurentPoly {
    LaurentPoly::monomial(e.to_vec(), c)
}

fn x(i: usize) -> ParamPoly {
    ParamPoly::var(i)
}

fn cst(q: Q) -> ParamPoly {
    ParamPoly::constant(q)
}

fn make_rule(id: usize, p: LaurentPoly, q: LaurentPoly, b: Condition, ord: &MonomialOrder) -> ReductionRule {
    ReductionRule::new(id, ConditionalIdentity::new(p, q, b), ord).expect("family rule is normalized")
}

/// (x3 = 0 ∧ x2 = j ∧ x1 ≥ lo), with lo given as a rational lower bound.
fn member_cond(j: usize, lo: Q) -> Condition {
    Condition::and(vec![Condition::var_eq(2, 0), Condition::var_eq(1, j as i64), Condition::atom(&x(0) - &cst(lo), Rel::Ge)])
}

/// k!! with (−1)!! = 0!! = 1.
pub fn double_factorial(k: i64) -> Q {
    let mut acc = Q::one();
    let mut i = k;
    while i > 1 {
        acc *= qi(i);
        i -= 2;
    }
    acc
}

pub fn binomial(n: i64, k: i64) -> Q {
    if k < 0 || k > n {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * qi(n - i) / qi(i + 1);
    }
    acc
}

/// c_{j,m} for odd j.
pub fn airy_c(j: i64, m: i64) -> Q {
    let s = if m % 2 == 1 { Q::one() } else { -Q::one() };
    s * double_factorial(j - 1) / (double_factorial(j - 2 * m + 1) * double_factorial(2 * m - 1))
}

/// The coefficient matrix A of the even-j system (size j/2 + 1) over Q[x1].
pub fn airy_matrix(j: usize) -> Vec<Vec<ParamPoly>> {
    let h = (j / 2) as i64;
    let sz = h as usize + 1;
    let mut a = vec![vec![ParamPoly::zero(); sz]; sz];
    for m in 0..=h {
        let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
        a[m as usize][0] = (&x(0) + &ParamPoly::from_int(1 - m)).scale(&(sign * binomial(h, m)));
        if m >= 1 {
            a[m as usize][m as usize] = ParamPoly::from_int(j as i64 - 2 * m + 1);
            a[m as usize - 1][m as usize] = ParamPoly::from_int(2 * m - 1);
        }
    }
    a
}

/// b_{j,0} = x1 + 1 − j/4.
pub fn airy_b0(j: usize) -> ParamPoly {
    &x(0) + &cst(Q::one() - qr(j as i64, 4))
}

/// (b_{j,1}, …, b_{j,j/2+1}) for even j by fraction-free elimination.
pub fn airy_b(j: usize) -> Vec<ParamPoly> {
    let a = airy_matrix(j);
    let mut rhs = vec![ParamPoly::zero(); a.len()];
    rhs[0] = airy_b0(j);
    let (det, nums) = linalg::fraction_free_solve(&a, &rhs).expect("det(A) = b0·j!! is nonzero");
    nums.iter().map(|y| div_exact(y, &det).expect("Cramer quotient is polynomial")).collect()
}

/// Member j of the Airy family under the order with rows (0,1,1), (2,0,1), (0,0,1).
pub fn airy_rules(j: usize) -> ReductionRule {
    let ord = fields::airy_order();
    let n = 3;
    let ji = j as i64;
    let mut p = LaurentPoly::zero(n);
    let mut q = LaurentPoly::zero(n);
    let b;
    let tail = |m: i64| [-m - 1, -2 * m + 1, 2 * m - 1];
    let qtail = |m: i64| [-m, -2 * m + 1, 2 * m - 1];
    if j % 2 == 1 {
        p = &p + &LaurentPoly::one(n);
        for m in 1..=(ji + 1) / 2 {
            let c = airy_c(ji, m);
            p = &p + &mono(tail(m), (&x(0) - &ParamPoly::from_int(m)).scale(&c));
            q = &q + &mono(qtail(m), cst(c));
        }
        b = member_cond(j, qi((ji + 1) / 2));
    } else {
        let h = ji / 2;
        let bs = airy_b(j);
        p = &p + &LaurentPoly::constant(n, airy_b0(j));
        for m in 1..=h {
            let bm = &bs[m as usize];
            p = &p + &mono(tail(m), &(&x(0) - &ParamPoly::from_int(m)) * bm);
            q = &q + &mono(qtail(m), bm.clone());
        }
        for m in 0..=h {
            let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
            q = &q + &mono([1 - m, -2 * m, 2 * m], bs[0].scale(&(sign * binomial(h, m))));
        }
        b = member_cond(j, qi(h - 1));
    }
    make_rule(FAMILY_ID + j, p, q, b, &ord)
}

/// b_{j,m,n} for 0 ≤ n ≤ m ≤ j as polynomials in x1.
pub fn cei_b(j: usize) -> Vec<Vec<ParamPoly>> {
    let ji = j as i64;
    let mut b: Vec<Vec<ParamPoly>> = Vec::with_capacity(j + 1);
    let get = |b: &Vec<Vec<ParamPoly>>, m: i64, k: i64| -> ParamPoly {
        if m < 0 || k < 0 || k > m {
            ParamPoly::zero()
        } else {
            b[m as usize][k as usize].clone()
        }
    };
    for m in 0..=ji {
        let mut row = Vec::with_capacity(m as usize + 1);
        for k in 0..=m {
            if m == 0 {
                row.push(ParamPoly::one());
                continue;
            }
            let inv = qr(1, m);
            let c1 = (&ParamPoly::from_int(ji + 2 * (m - k)) - &x(0)).scale(&inv);
            let c2 = (&x(0) - &ParamPoly::from_int(ji + 2 * (m - k + 1))).scale(&inv);
            let c3 = qi(ji + 2 - m) * &inv;
            let c4 = qi(m - ji - 2) * &inv;
            let v = &(&(&c1 * &get(&b, m - 1, k)) + &(&c2 * &get(&b, m - 1, k - 1)))
                + &(&get(&b, m - 2, k).scale(&c3) + &get(&b, m - 2, k - 1).scale(&c4));
            row.push(v);
        }
        b.push(row);
    }
    b
}

/// a_{j,n} for 0 ≤ n ≤ j+1.
pub fn cei_a(j: usize, b: &[Vec<ParamPoly>]) -> Vec<ParamPoly> {
    let ji = j as i64;
    let get = |m: i64, k: i64| -> ParamPoly {
        if m < 0 || k < 0 || k > m {
            ParamPoly::zero()
        } else {
            b[m as usize][k as usize].clone()
        }
    };
    (0..=ji + 1)
        .map(|k| {
            let u = &(&x(0) + &ParamPoly::from_int(2 * k - 3 * ji - 2)) * &get(ji, k);
            let v = &(&x(0) + &ParamPoly::from_int(2 * k - 3 * ji - 4)) * &get(ji, k - 1);
            &(&(&u - &v) - &get(ji - 1, k)) + &get(ji - 1, k - 1)
        })
        .collect()
}

/// Member j of the first CEI family (block order rows (0,1,1), (0,0,1), (1,0,0)).
pub fn cei_rules_v1(j: usize) -> ReductionRule {
    let ord = fields::cei_order_v1();
    let ji = j as i64;
    let b = cei_b(j);
    let a = cei_a(j, &b);
    let mut p = LaurentPoly::zero(3);
    for (k, ak) in a.iter().enumerate() {
        p = &p + &mono([2 * k as i64 - 2 * ji - 2, 0, 0], ak.clone());
    }
    let mut q = LaurentPoly::zero(3);
    for m in 0..=ji {
        for k in 0..=m {
            q = &q + &mono([2 * k - 2 * ji - 2, m - ji, ji - m], b[m as usize][k as usize].clone());
        }
    }
    let cond = Condition::and(vec![member_cond(j, qi(2 * ji + 2)), Condition::var_ne(0, 2)]);
    make_rule(FAMILY_ID + j, p, q, cond, &ord)
}

/// Member k of the second CEI family; k = 0 is its generic rule.
pub fn cei_rules_v2(k: usize) -> ReductionRule {
    let ord = fields::cei_order_v2();
    let names: Vec<String> = (1..=3).map(|i| format!("t{i}")).collect();
    let parse = |s: &str| parse_laurent(s, &names, 3).expect("valid family text");
    if k == 0 {
        let p = parse("-(x1-x2+x3-2) + x3*t2*t3^-1 + x2*t1^-2*t2^-1*t3 + (x1-x2+x3-2)*t1^-2 - x3*t1^-2*t2*t3^-1");
        let cond = Condition::and(vec![
            Condition::var_ge(0, 2),
            Condition::atom(&(&(&x(0) - &x(1)) + &x(2)) - &ParamPoly::from_int(2), Rel::Ne),
        ]);
        return make_rule(FAMILY_ID, p, parse("t1^-2"), cond, &ord);
    }
    let ki = k as i64;
    let base = parse("t3 - 1/2*t2");
    let bracket = parse(&format!("(x1+{})*t3 - (1/2*x1+{})*t2", ki - 1, ki - 1));
    let p = if k == 1 {
        // (t3 − t2/2)^{-1} cancels the bracket x1·(t3 − t2/2).
        LaurentPoly::constant(3, x(0))
    } else {
        (&base.pow(ki - 2).expect("nonnegative power") * &bracket).mul_monomial(&[0, 0, 1 - ki])
    };
    let q = (&parse("t2") * &base.pow(ki - 1).expect("nonnegative power")).mul_monomial(&[0, 0, -ki]);
    let cond = Condition::and(vec![
        Condition::var_eq(2, ki),
        Condition::atom(&x(0) + &ParamPoly::from_int(ki - 1), Rel::Ne),
        Condition::atom(&(&x(1) - &x(0)) - &ParamPoly::from_int(ki - 2), Rel::Eq),
    ]);
    make_rule(FAMILY_ID + k, p, q, cond, &ord)
}

/// A system made of a family's generic rules plus the family itself.
pub fn family_system(kind: FamilyKind) -> ReductionSystem {
    let fam = RuleFamily::new(kind);
    let mut sys = ReductionSystem::new(fam.order.clone(), fam.base_rules(), &format!("builtin:{}", fam.name()));
    sys.families.push(std::sync::Arc::new(fam));
    sys.complete = true;
    sys
}

/// Built-in systems by name: "airy", "cei-block1", "cei-block2".
pub fn builtin_system(name: &str) -> Option<ReductionSystem> {
    let kind = match name {
        "airy" => FamilyKind::Airy,
        "cei-block1" | "cei" => FamilyKind::CeiV1,
        "cei-block2" => FamilyKind::CeiV2,
        _ => return None,
    };
    Some(family_system(kind))
}

/// Univariate polynomial in z as a coefficient vector.
type Uni = Vec<Q>;

fn uni_trim(mut p: Uni) -> Uni {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn uni_add(a: &Uni, b: &Uni) -> Uni {
    let n = a.len().max(b.len());
    uni_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn uni_shift_scale(a: &Uni, k: usize, c: &Q) -> Uni {
    let mut out = vec![Q::zero(); k];
    out.extend(a.iter().map(|x| x * c));
    uni_trim(out)
}

fn uni_deriv(a: &Uni) -> Uni {
    uni_trim(a.iter().enumerate().skip(1).map(|(i, c)| c * qi(i as i64)).collect())
}

fn uni_integrate(a: &Uni) -> Uni {
    let mut out = vec![Q::zero()];
    out.extend(a.iter().enumerate().map(|(i, c)| c / qi(i as i64 + 1)));
    uni_trim(out)
}

/// g(t3/t2)·t1^e1·t2^d as a polynomial.
fn homogenize(g: &Uni, e1: i64, d: i64, c: &Q) -> crate::poly::Poly {
    let mut out = crate::poly::Poly::zero(3);
    for (k, gk) in g.iter().enumerate() {
        if !gk.is_zero() {
            out.add_term(vec![e1, d - k as i64, k as i64], gk * c);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HardInstanceError {
    #[error("need d ≥ 2m+1, got m = {m}, d = {d}")]
    DegreeTooSmall { m: i64, d: i64 },
}

/// The Airy pair (f, g) with ∂g = f, deg_{t1} f = n and deg_{t1} g = n + m.
pub fn airy_hard_instance(m: i64, n: i64, d: i64) -> Result<(crate::poly::Poly, crate::poly::Poly), HardInstanceError> {
    if m < 0 || n < 0 || d < 2 * m + 1 {
        return Err(HardInstanceError::DegreeTooSmall { m, d });
    }
    // gs[l + 1] = g_l
    let mut gs: Vec<Uni> = vec![Vec::new(), vec![Q::one()]];
    for l in 1..=m + 1 {
        let g1 = &gs[l as usize];
        let g2 = &gs[l as usize - 1];
        let dg = uni_add(
            &uni_add(&uni_shift_scale(&uni_deriv(g1), 2, &Q::one()), &uni_shift_scale(g1, 1, &qi(-d))),
            &uni_shift_scale(g2, 0, &qi(-(m + n - l + 2))),
        );
        gs.push(uni_integrate(&dg));
    }
    let g_of = |l: i64| &gs[(l + 1) as usize];
    let mut f = homogenize(&uni_deriv(g_of(m + 1)), n, d, &-Q::one());
    if n > 0 {
        f = &f + &homogenize(g_of(m), n - 1, d, &qi(n));
    }
    let mut g = crate::poly::Poly::zero(3);
    for l in 0..=m {
        g = &g + &homogenize(g_of(l), m + n - l, d, &Q::one());
    }
    Ok((f, g))
}
