//! Conditional identities (P, Q, B), reduction rules, the conversion of
//! identities into rules, and reduction of identities and polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::builtin::RuleFamily;
use crate::conditions::{cond_implies, cond_sample, cond_sat, cond_simplify, Condition, Implication, SatResult, DEFAULT_BOX};
use crate::diffop::OperatorSpec;
use crate::poly::{div_exact, gcd, Exps, LaurentPoly, MonomialOrder, ParamPoly, Poly, Printer, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("monomial {0:?} does not occur in the polynomial")]
    NotInSupport(Exps),
    #[error("rule condition is false at {0:?}")]
    ConditionFails(Exps),
    #[error("leading coefficient vanishes at {0:?}")]
    LeadingCoefficientVanishes(Exps),
    #[error("leading monomial of P is not 1")]
    NotNormalized,
    #[error("identity fails at {0:?}")]
    IdentityFails(Exps),
}

/// L(Q(α,t)t^α) = P(α,t)t^α for every α ∈ N^n with B(α).
#[derive(Clone, PartialEq)]
pub struct ConditionalIdentity {
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    pub b: Condition,
}

impl ConditionalIdentity {
    pub fn new(p: LaurentPoly, q: LaurentPoly, b: Condition) -> Self {
        Self { p, q, b }
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    /// lm_t(Q) − lm_t(P); None when either is zero.
    pub fn offset(&self, ord: &MonomialOrder) -> Option<Exps> {
        let a = self.q.lm(ord)?;
        let b = self.p.lm(ord)?;
        Some(a.iter().zip(&b).map(|(x, y)| x - y).collect())
    }

    /// Checks the identity at up to `count` sampled α satisfying B.
    pub fn check_sampled<R: Rng>(&self, op: &OperatorSpec, count: usize, rng: &mut R) -> Result<(), RuleError> {
        for alpha in cond_sample(&self.b, self.n(), count, 12, rng) {
            self.check_at(op, &alpha)?;
        }
        Ok(())
    }

    pub fn check_at(&self, op: &OperatorSpec, alpha: &[i64]) -> Result<(), RuleError> {
        let q = self.q.substitute_x(alpha).mul_monomial(alpha);
        let p = self.p.substitute_x(alpha).mul_monomial(alpha);
        let ok = q.is_ordinary() && op.apply(&q).is_ok_and(|lq| lq == p);
        if ok {
            Ok(())
        } else {
            Err(RuleError::IdentityFails(alpha.to_vec()))
        }
    }
}

impl fmt::Debug for ConditionalIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pr = Printer::default_for(self.n());
        write!(f, "({}, {}, {})", pr.laurent(&self.p), pr.laurent(&self.q), self.b)
    }
}

/// A conditional identity with lm_t(P) = 1 whose leading coefficient does not
/// vanish under B.
#[derive(Clone, PartialEq)]
pub struct ReductionRule {
    pub id: usize,
    pub ci: ConditionalIdentity,
    pub lc: ParamPoly,
    pub offset: Option<Exps>,
    pub exact_offset: bool,
}

impl ReductionRule {
    /// Wraps an identity whose P has leading monomial 1 under `ord`.
    pub fn new(id: usize, ci: ConditionalIdentity, ord: &MonomialOrder) -> Result<Self, RuleError> {
        let n = ci.n();
        let lm = ci.p.lm(ord).ok_or(RuleError::NotNormalized)?;
        if lm.iter().any(|&e| e != 0) {
            return Err(RuleError::NotNormalized);
        }
        let lc = ci.p.lc(ord).expect("nonzero");
        let offset = ci.offset(ord);
        let exact_offset = match ci.q.lc(ord) {
            Some(lq) => cond_sat(&Condition::and2(&ci.b, &Condition::eq0(lq)), n, DEFAULT_BOX) == SatResult::Unsat,
            None => false,
        };
        Ok(Self { id, ci, lc, offset, exact_offset })
    }

    pub fn p(&self) -> &LaurentPoly {
        &self.ci.p
    }

    pub fn q(&self) -> &LaurentPoly {
        &self.ci.q
    }

    pub fn b(&self) -> &Condition {
        &self.ci.b
    }

    pub fn n(&self) -> usize {
        self.ci.n()
    }

    /// Whether the rule can reduce t^α.
    pub fn applies_to(&self, alpha: &[i64]) -> bool {
        self.ci.b.eval(alpha) && !self.lc.eval(alpha).is_zero()
    }

    /// The instance (P(α,t)t^α, Q(α,t)t^α).
    pub fn instance(&self, alpha: &[i64]) -> (Poly, Poly) {
        (self.ci.p.substitute_x(alpha).mul_monomial(alpha), self.ci.q.substitute_x(alpha).mul_monomial(alpha))
    }

    pub fn label(&self) -> String {
        format!("r{}", self.id)
    }
}

impl fmt::Debug for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{} = {:?}", self.id, self.ci)
    }
}

/// Compares offsets (Laurent monomials), with the zero sentinel lowest.
pub fn cmp_offset(ord: &MonomialOrder, a: &Option<Exps>, b: &Option<Exps>) -> Ordering {
    ord.cmp_opt(a.as_deref(), b.as_deref())
}

/// A set of reduction rules under a fixed order, optionally extended by
/// infinite rule families.
#[derive(Clone)]
pub struct ReductionSystem {
    pub order: MonomialOrder,
    pub rules: Vec<ReductionRule>,
    pub families: Vec<Arc<RuleFamily>>,
    pub source: String,
    pub complete: bool,
}

impl ReductionSystem {
    pub fn new(order: MonomialOrder, rules: Vec<ReductionRule>, source: &str) -> Self {
        Self { order, rules, families: Vec::new(), source: source.into(), complete: false }
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn rule(&self, id: usize) -> Option<&ReductionRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// The rule used to reduce t^α: finite rules first (by index), then the
    /// families' dispatch.
    pub fn rule_for(&self, alpha: &[i64]) -> Option<ReductionRule> {
        if let Some(r) = self.rules.iter().find(|r| r.applies_to(alpha)) {
            return Some(r.clone());
        }
        self.families.iter().find_map(|f| f.rule_for(alpha).filter(|r| r.applies_to(alpha)))
    }

    /// All rules able to reduce t^α (used to test disjointness).
    pub fn rules_for_all(&self, alpha: &[i64]) -> Vec<ReductionRule> {
        let mut v: Vec<ReductionRule> = self.rules.iter().filter(|r| r.applies_to(alpha)).cloned().collect();
        for f in &self.families {
            v.extend(f.matching_rules(alpha).into_iter().filter(|r| r.applies_to(alpha)));
        }
        v
    }
}

impl fmt::Debug for ReductionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionSystem")
            .field("order", &self.order)
            .field("rules", &self.rules)
            .field("families", &self.families.iter().map(|x| x.name()).collect::<Vec<_>>())
            .finish()
    }
}

fn exists(b: &Condition, n: usize) -> bool {
    cond_sat(b, n, DEFAULT_BOX) != SatResult::Unsat
}

/// The condition "P(x, t) ≠ 0 as a polynomial in t".
fn some_coeff_nonzero(p: &LaurentPoly) -> Condition {
    Condition::or(p.terms().map(|(_, c)| Condition::ne0(c.clone())).collect())
}

/// Splits a conditional identity into reduction rules (ids left at 0).
pub fn ci_to_rules(ci: &ConditionalIdentity, ord: &MonomialOrder) -> Vec<ReductionRule> {
    let n = ci.n();
    let mut p = ci.p.clone();
    let mut b = ci.b.clone();
    let mut out = Vec::new();
    while !p.is_zero() && exists(&Condition::and2(&b, &some_coeff_nonzero(&p)), n) {
        let (beta, lc) = {
            let (e, c) = p.leading(ord).expect("nonzero");
            (e.clone(), c.clone())
        };
        if exists(&Condition::and2(&b, &Condition::ne0(lc.clone())), n) {
            let pm = p.shift_x(&beta);
            let qm = ci.q.shift_x(&beta);
            let mut parts = vec![b.shift(&beta), Condition::ne0(lc.shift(&beta))];
            parts.extend(beta.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| Condition::var_ge(i, k)));
            let bm = cond_simplify(&Condition::and(parts), n);
            let rule = ReductionRule::new(0, ConditionalIdentity::new(pm, qm, bm), ord).expect("lm is 1 after shifting");
            out.push(rule);
            b = Condition::and2(&b, &Condition::eq0(lc));
        }
        p = p.tail(ord);
    }
    out
}

/// Basic rules from (p, 1, true), numbered from 1.
pub fn basic_rules(op: &OperatorSpec, ord: &MonomialOrder) -> ReductionSystem {
    let ci = ConditionalIdentity::new(op.p.clone(), LaurentPoly::one(op.n()), Condition::True);
    let mut rules = ci_to_rules(&ci, ord);
    for (k, r) in rules.iter_mut().enumerate() {
        r.id = k + 1;
    }
    ReductionSystem::new(ord.clone(), rules, "basic")
}

pub fn offset_of(ci: &ConditionalIdentity, ord: &MonomialOrder) -> Option<Exps> {
    ci.offset(ord)
}

/// Whether `ci` is reducible by `r`; undecided cases count as not reducible.
pub fn ci_reducible(ci: &ConditionalIdentity, r: &ReductionRule, ord: &MonomialOrder) -> bool {
    let Some(beta) = ci.p.lm(ord) else { return false };
    let target = Condition::and2(&r.ci.b.translate(&beta), &Condition::ne0(r.lc.translate(&beta)));
    cond_implies(&ci.b, &target, ci.n(), DEFAULT_BOX) == Implication::Proved
}

/// The reduction of `ci` by `r` (the caller checks reducibility).
pub fn reduce_ci(ci: &ConditionalIdentity, r: &ReductionRule, ord: &MonomialOrder) -> ConditionalIdentity {
    let (beta, lc) = {
        let (e, c) = ci.p.leading(ord).expect("P is nonzero");
        (e.clone(), c.clone())
    };
    let neg: Exps = beta.iter().map(|b| -b).collect();
    let lc1 = r.lc.translate(&beta);
    let g = gcd(&lc, &lc1);
    let a = div_exact(&lc1, &g).expect("gcd divides");
    let c = div_exact(&lc, &g).expect("gcd divides");
    let p1 = r.ci.p.shift_x(&neg);
    let q1 = r.ci.q.shift_x(&neg);
    let p = &ci.p.scale(&a) - &p1.scale(&c);
    let q = &ci.q.scale(&a) - &q1.scale(&c);
    ConditionalIdentity::new(p, q, ci.b.clone())
}

/// Whether two rules form a critical pair; undecided counts as yes.
pub fn critical_pair(r1: &ReductionRule, r2: &ReductionRule) -> bool {
    exists(&Condition::and2(&r1.ci.b, &r2.ci.b), r1.n())
}

/// One reduction step of t^α in f by r: returns (f', Δu) with f = L(Δu) + f'.
pub fn reduce_poly_step(f: &Poly, r: &ReductionRule, alpha: &[i64]) -> Result<(Poly, Poly), RuleError> {
    let c = f.coeff(alpha).cloned().ok_or_else(|| RuleError::NotInSupport(alpha.to_vec()))?;
    if !r.ci.b.eval(alpha) {
        return Err(RuleError::ConditionFails(alpha.to_vec()));
    }
    let l = r.lc.eval(alpha);
    if l.is_zero() {
        return Err(RuleError::LeadingCoefficientVanishes(alpha.to_vec()));
    }
    let k: Q = c / l;
    let (pi, qi) = r.instance(alpha);
    Ok((f - &pi.scale_q(&k), qi.scale_q(&k)))
}
