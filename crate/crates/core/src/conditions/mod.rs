//! Conditions over N^n: boolean combinations of polynomial (in)equations in
//! the exponent variables, with a sound three-valued decision procedure.
//!
//! Existential questions may come back UNKNOWN; callers decide which way to
//! round. UNSAT is only ever reported when it is proven.

mod decide;
mod sexpr;

use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::poly::{fmt_q, ParamPoly, Q};

pub use decide::{DEFAULT_BOX, DNF_CAP};
pub use sexpr::{parse_poly_sexpr, parse_sexpr, poly_to_sexpr, SexprError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Ne,
    Ge,
    Gt,
    Le,
    Lt,
}

impl Rel {
    /// Relation of the logical negation.
    pub fn negate(self) -> Rel {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Ge => Rel::Lt,
            Rel::Gt => Rel::Le,
            Rel::Le => Rel::Gt,
            Rel::Lt => Rel::Ge,
        }
    }

    /// Relation after multiplying both sides by a negative number.
    pub fn mirror(self) -> Rel {
        match self {
            Rel::Ge => Rel::Le,
            Rel::Gt => Rel::Lt,
            Rel::Le => Rel::Ge,
            Rel::Lt => Rel::Gt,
            r => r,
        }
    }

    pub fn holds(self, v: &Q) -> bool {
        match self {
            Rel::Eq => v.is_zero(),
            Rel::Ne => !v.is_zero(),
            Rel::Ge => !v.is_negative(),
            Rel::Gt => v.is_positive(),
            Rel::Le => !v.is_positive(),
            Rel::Lt => v.is_negative(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Le => "<=",
            Rel::Lt => "<",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Rel> {
        Some(match s {
            "=" => Rel::Eq,
            "!=" => Rel::Ne,
            ">=" => Rel::Ge,
            ">" => Rel::Gt,
            "<=" => Rel::Le,
            "<" => Rel::Lt,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    True,
    False,
    Atom(ParamPoly, Rel),
    And(Vec<Condition>),
    Or(Vec<Condition>),
    Not(Box<Condition>),
}

/// Three-valued satisfiability answer. Witnesses are checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<i64>),
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Implication {
    Proved,
    Disproved(Vec<i64>),
    Unknown,
}

impl Condition {
    /// Atom `p rel 0`, folded when p is constant.
    pub fn atom(p: ParamPoly, rel: Rel) -> Condition {
        match p.constant_value() {
            Some(c) => Condition::from_bool(rel.holds(&c)),
            None => Condition::Atom(p, rel),
        }
    }

    pub fn from_bool(b: bool) -> Condition {
        if b {
            Condition::True
        } else {
            Condition::False
        }
    }

    pub fn eq0(p: ParamPoly) -> Condition {
        Condition::atom(p, Rel::Eq)
    }

    pub fn ne0(p: ParamPoly) -> Condition {
        Condition::atom(p, Rel::Ne)
    }

    /// x_i = c
    pub fn var_eq(i: usize, c: i64) -> Condition {
        Condition::eq0(ParamPoly::linear(i, 1, -c))
    }

    /// x_i ≥ c
    pub fn var_ge(i: usize, c: i64) -> Condition {
        Condition::atom(ParamPoly::linear(i, 1, -c), Rel::Ge)
    }

    /// x_i ≠ c
    pub fn var_ne(i: usize, c: i64) -> Condition {
        Condition::ne0(ParamPoly::linear(i, 1, -c))
    }

    /// Conjunction with flattening and constant folding.
    pub fn and(parts: Vec<Condition>) -> Condition {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Condition::True => {}
                Condition::False => return Condition::False,
                Condition::And(v) => out.extend(v),
                c => out.push(c),
            }
        }
        let mut dedup: Vec<Condition> = Vec::new();
        for c in out {
            if !dedup.contains(&c) {
                dedup.push(c);
            }
        }
        match dedup.len() {
            0 => Condition::True,
            1 => dedup.pop().unwrap(),
            _ => Condition::And(dedup),
        }
    }

    pub fn or(parts: Vec<Condition>) -> Condition {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Condition::False => {}
                Condition::True => return Condition::True,
                Condition::Or(v) => out.extend(v),
                c => out.push(c),
            }
        }
        let mut dedup: Vec<Condition> = Vec::new();
        for c in out {
            if !dedup.contains(&c) {
                dedup.push(c);
            }
        }
        match dedup.len() {
            0 => Condition::False,
            1 => dedup.pop().unwrap(),
            _ => Condition::Or(dedup),
        }
    }

    pub fn not(c: Condition) -> Condition {
        match c {
            Condition::True => Condition::False,
            Condition::False => Condition::True,
            Condition::Not(inner) => *inner,
            c => Condition::Not(Box::new(c)),
        }
    }

    pub fn and2(a: &Condition, b: &Condition) -> Condition {
        Condition::and(vec![a.clone(), b.clone()])
    }

    pub fn eval(&self, alpha: &[i64]) -> bool {
        match self {
            Condition::True => true,
            Condition::False => false,
            Condition::Atom(p, r) => r.holds(&p.eval(alpha)),
            Condition::And(v) => v.iter().all(|c| c.eval(alpha)),
            Condition::Or(v) => v.iter().any(|c| c.eval(alpha)),
            Condition::Not(c) => !c.eval(alpha),
        }
    }

    /// Applies `f` to every atom polynomial, refolding constants.
    pub fn map_polys(&self, f: &dyn Fn(&ParamPoly) -> ParamPoly) -> Condition {
        match self {
            Condition::True | Condition::False => self.clone(),
            Condition::Atom(p, r) => Condition::atom(f(p), *r),
            Condition::And(v) => Condition::and(v.iter().map(|c| c.map_polys(f)).collect()),
            Condition::Or(v) => Condition::or(v.iter().map(|c| c.map_polys(f)).collect()),
            Condition::Not(c) => Condition::not(c.map_polys(f)),
        }
    }

    /// B|_{x = x − β}.
    pub fn shift(&self, beta: &[i64]) -> Condition {
        self.map_polys(&|p| p.shift(beta))
    }

    /// B|_{x = x + c}.
    pub fn translate(&self, c: &[i64]) -> Condition {
        self.map_polys(&|p| p.translate(c))
    }

    /// Negation normal form: negations pushed into the atoms.
    pub fn nnf(&self) -> Condition {
        self.nnf_signed(false)
    }

    fn nnf_signed(&self, neg: bool) -> Condition {
        match (self, neg) {
            (Condition::True, false) | (Condition::False, true) => Condition::True,
            (Condition::True, true) | (Condition::False, false) => Condition::False,
            (Condition::Atom(p, r), _) => Condition::atom(p.clone(), if neg { r.negate() } else { *r }),
            (Condition::And(v), false) => Condition::and(v.iter().map(|c| c.nnf_signed(false)).collect()),
            (Condition::And(v), true) => Condition::or(v.iter().map(|c| c.nnf_signed(true)).collect()),
            (Condition::Or(v), false) => Condition::or(v.iter().map(|c| c.nnf_signed(false)).collect()),
            (Condition::Or(v), true) => Condition::and(v.iter().map(|c| c.nnf_signed(true)).collect()),
            (Condition::Not(c), _) => c.nnf_signed(!neg),
        }
    }

    /// Disjunctive normal form as lists of atoms; None if more than `cap`
    /// conjuncts would be produced.
    pub fn dnf(&self, cap: usize) -> Option<Vec<Vec<(ParamPoly, Rel)>>> {
        fn go(c: &Condition, cap: usize) -> Option<Vec<Vec<(ParamPoly, Rel)>>> {
            match c {
                Condition::True => Some(vec![vec![]]),
                Condition::False => Some(vec![]),
                Condition::Atom(p, r) => Some(vec![vec![(p.clone(), *r)]]),
                Condition::Or(v) => {
                    let mut out = Vec::new();
                    for x in v {
                        out.extend(go(x, cap)?);
                        if out.len() > cap {
                            return None;
                        }
                    }
                    Some(out)
                }
                Condition::And(v) => {
                    let mut acc: Vec<Vec<(ParamPoly, Rel)>> = vec![vec![]];
                    for x in v {
                        let d = go(x, cap)?;
                        if acc.len().saturating_mul(d.len()) > cap {
                            return None;
                        }
                        let mut next = Vec::with_capacity(acc.len() * d.len());
                        for a in &acc {
                            for b in &d {
                                let mut c = a.clone();
                                c.extend(b.iter().cloned());
                                next.push(c);
                            }
                        }
                        acc = next;
                    }
                    Some(acc)
                }
                Condition::Not(_) => unreachable!("dnf expects nnf input"),
            }
        }
        go(&self.nnf(), cap)
    }

    pub fn to_sexpr(&self) -> String {
        sexpr::cond_to_sexpr(self)
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Condition::True | Condition::False => None,
            Condition::Atom(p, _) => p.max_var(),
            Condition::And(v) | Condition::Or(v) => v.iter().filter_map(|c| c.max_var()).max(),
            Condition::Not(c) => c.max_var(),
        }
    }
}

/// Standard boolean evaluation at α ∈ N^n.
pub fn cond_eval(b: &Condition, alpha: &[i64]) -> bool {
    b.eval(alpha)
}

/// Satisfiability over N^n, searching [0, box_bound]^n when undecided.
pub fn cond_sat(b: &Condition, n: usize, box_bound: i64) -> SatResult {
    decide::sat(b, n, box_bound)
}

/// Whether b1 implies b2 on N^n.
pub fn cond_implies(b1: &Condition, b2: &Condition, n: usize, box_bound: i64) -> Implication {
    let q = Condition::and(vec![b1.clone(), Condition::not(b2.clone())]);
    match cond_sat(&q, n, box_bound) {
        SatResult::Unsat => Implication::Proved,
        SatResult::Sat(w) => Implication::Disproved(w),
        SatResult::Unknown => Implication::Unknown,
    }
}

/// Equivalent condition (same solutions in N^n) in a canonical, smaller form.
pub fn cond_simplify(b: &Condition, n: usize) -> Condition {
    decide::simplify(b, n)
}

/// Up to `count` random points of N^n satisfying b; values of free
/// variables are drawn from [lower bound, lower bound + spread].
pub fn cond_sample<R: Rng>(b: &Condition, n: usize, count: usize, spread: i64, rng: &mut R) -> Vec<Vec<i64>> {
    decide::sample(b, n, count, spread, rng)
}

fn atom_infix(p: &ParamPoly, r: Rel) -> String {
    // Move the constant to the right when that reads naturally.
    let c = p.constant_term();
    let s = &(p - &ParamPoly::constant(c.clone()));
    let (lhs, rhs, rel) = match s.lead() {
        Some((_, lc)) if lc.is_negative() => (-s, c, r.mirror()),
        _ => (s.clone(), -c, r),
    };
    format!("{} {} {}", lhs.to_text(), rel.symbol(), fmt_q(&rhs))
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::True => f.write_str("true"),
            Condition::False => f.write_str("false"),
            Condition::Atom(p, r) => f.write_str(&atom_infix(p, *r)),
            Condition::And(v) => {
                let parts: Vec<String> =
                    v.iter().map(|c| if matches!(c, Condition::Or(_)) { format!("({c})") } else { c.to_string() }).collect();
                f.write_str(&parts.join(" && "))
            }
            Condition::Or(v) => {
                let parts: Vec<String> =
                    v.iter().map(|c| if matches!(c, Condition::And(_)) { format!("({c})") } else { c.to_string() }).collect();
                f.write_str(&parts.join(" || "))
            }
            Condition::Not(c) => write!(f, "!({c})"),
        }
    }
}
