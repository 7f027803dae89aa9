//! Completion of reduction systems: Norman's pair-queue process and the
//! refined process that replaces rules instead of only adding them.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::conditions::{cond_sat, cond_simplify, Condition, SatResult, DEFAULT_BOX};
use crate::poly::{MonomialOrder, Poly, Printer};
use crate::rules::{ci_reducible, ci_to_rules, cmp_offset, reduce_ci, ConditionalIdentity, ReductionRule, ReductionSystem};

pub const DEFAULT_MAX_ITERATIONS: usize = 200;
pub const DEFAULT_INNER_BUDGET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    MainBudgetExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent {
    PairChosen { iter: usize, i: usize, j: usize },
    RuleRemoved(usize),
    RemainderAdded(usize),
    Reduced { by: usize },
    InnerBudgetExceeded,
    RulesCreated { added: Vec<usize> },
    Kernel(Poly),
}

#[derive(Clone)]
pub struct CompletionOutcome {
    pub status: CompletionStatus,
    pub system: ReductionSystem,
    pub kernel_elements: Vec<Poly>,
    pub trace: Vec<TraceEvent>,
    pub iterations: usize,
    /// Every rule ever created, including removed ones, by id.
    pub history: Vec<ReductionRule>,
}

impl CompletionOutcome {
    /// One summary line per main-loop iteration followed by indented details.
    pub fn render_trace(&self) -> Vec<String> {
        let n = self.system.n();
        let pr = Printer::default_for(n);
        let mut out = Vec::new();
        for ev in &self.trace {
            out.push(match ev {
                TraceEvent::PairChosen { iter, i, j } => format!("iter {iter}: pair (r{i}, r{j})"),
                TraceEvent::RuleRemoved(j) => format!("  removed r{j}"),
                TraceEvent::RemainderAdded(m) => format!("  remainder rule r{m}"),
                TraceEvent::Reduced { by } => format!("  reduced by r{by}"),
                TraceEvent::InnerBudgetExceeded => "  inner budget exhausted".to_string(),
                TraceEvent::RulesCreated { added } if added.is_empty() => "  no new rules".to_string(),
                TraceEvent::RulesCreated { added } => {
                    let ids: Vec<String> = added.iter().map(|m| format!("r{m}")).collect();
                    format!("  added {}", ids.join(", "))
                }
                TraceEvent::Kernel(k) => format!("  kernel element {}", pr.poly(k)),
            });
        }
        out
    }
}

impl fmt::Debug for CompletionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompletionOutcome")
            .field("status", &self.status)
            .field("iterations", &self.iterations)
            .field("rules", &self.system.rules)
            .field("kernel_elements", &self.kernel_elements)
            .finish()
    }
}

fn maybe_sat(b: &Condition, n: usize) -> bool {
    cond_sat(b, n, DEFAULT_BOX) != SatResult::Unsat
}

/// Caches the critical-pair test by rule ids (rules never change once created).
struct PairCache(HashMap<(usize, usize), bool>);

impl PairCache {
    fn critical(&mut self, a: &ReductionRule, b: &ReductionRule) -> bool {
        let key = (a.id.min(b.id), a.id.max(b.id));
        *self.0.entry(key).or_insert_with(|| crate::rules::critical_pair(a, b))
    }
}

/// Converts `ci` into rules, numbering new rules from `next_id`. When no rule
/// results and P vanishes at a witness of B, Q(α,t)t^α is a kernel element.
fn convert(
    ci: &ConditionalIdentity,
    ord: &MonomialOrder,
    next_id: &mut usize,
    kernel: &mut Vec<Poly>,
    trace: &mut Vec<TraceEvent>,
) -> Vec<ReductionRule> {
    let mut rules = ci_to_rules(ci, ord);
    for r in rules.iter_mut() {
        r.id = *next_id;
        *next_id += 1;
    }
    trace.push(TraceEvent::RulesCreated { added: rules.iter().map(|r| r.id).collect() });
    if rules.is_empty() {
        if let SatResult::Sat(alpha) = cond_sat(&ci.b, ci.n(), DEFAULT_BOX) {
            let p = ci.p.substitute_x(&alpha).mul_monomial(&alpha);
            let q = ci.q.substitute_x(&alpha).mul_monomial(&alpha);
            if p.is_zero() && !q.is_zero() && q.is_ordinary() {
                trace.push(TraceEvent::Kernel(q.clone()));
                kernel.push(q);
            }
        }
    }
    rules
}

fn next_id_after(rules: &[ReductionRule]) -> usize {
    rules.iter().map(|r| r.id).max().unwrap_or(0) + 1
}

/// Norman's completion process with FIFO pair selection.
pub fn complete_norman(basic: &ReductionSystem, max_iterations: usize) -> CompletionOutcome {
    let ord = basic.order.clone();
    let n = basic.n();
    let mut rules: Vec<ReductionRule> = basic.rules.clone();
    let mut next_id = next_id_after(&rules);
    let mut cache = PairCache(HashMap::new());
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..rules.len() {
        for i in 0..j {
            if cache.critical(&rules[i], &rules[j]) {
                queue.push_back((i, j));
            }
        }
    }
    let mut trace = Vec::new();
    let mut kernel = Vec::new();
    let mut iterations = 0;
    while !queue.is_empty() && iterations < max_iterations {
        let (i, j) = queue.pop_front().expect("nonempty");
        iterations += 1;
        trace.push(TraceEvent::PairChosen { iter: iterations, i: rules[i].id, j: rules[j].id });
        let (ri, rj) = (&rules[i], &rules[j]);
        let ci = ConditionalIdentity::new(rj.p().clone(), rj.q().clone(), Condition::and2(ri.b(), rj.b()));
        let red = reduce_ci(&ci, ri, &ord);
        trace.push(TraceEvent::Reduced { by: ri.id });
        if red.p.is_zero() {
            continue;
        }
        let red = ConditionalIdentity::new(red.p, red.q, cond_simplify(&red.b, n));
        let new = convert(&red, &ord, &mut next_id, &mut kernel, &mut trace);
        let start = rules.len();
        rules.extend(new);
        for j in start..rules.len() {
            for i in 0..j {
                if cache.critical(&rules[i], &rules[j]) {
                    queue.push_back((i, j));
                }
            }
        }
    }
    let status = if queue.is_empty() { CompletionStatus::Complete } else { CompletionStatus::MainBudgetExceeded };
    let mut system = ReductionSystem::new(ord, rules.clone(), "norman");
    system.complete = status == CompletionStatus::Complete;
    CompletionOutcome { status, system, kernel_elements: kernel, trace, iterations, history: rules }
}

/// Picks (i, j) with lm Q_i < lm Q_j forming a critical pair, minimizing
/// (lm Q_j, id_j, lm Q_i, id_i).
fn select_pair(s: &[ReductionRule], ord: &MonomialOrder, cache: &mut PairCache) -> Option<(usize, usize)> {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by(|&a, &b| cmp_offset(ord, &s[a].offset, &s[b].offset).then(s[a].id.cmp(&s[b].id)));
    for &j in &idx {
        for &i in &idx {
            if cmp_offset(ord, &s[i].offset, &s[j].offset) != std::cmp::Ordering::Less {
                break;
            }
            if cache.critical(&s[i], &s[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The refined completion process.
pub fn complete_refined(basic: &ReductionSystem, max_iterations: usize, inner_budget: usize) -> CompletionOutcome {
    let ord = basic.order.clone();
    let n = basic.n();
    let mut s: Vec<ReductionRule> = basic.rules.clone();
    let mut history = s.clone();
    let mut next_id = next_id_after(&s);
    let mut cache = PairCache(HashMap::new());
    let mut trace = Vec::new();
    let mut kernel = Vec::new();
    let mut iterations = 0;
    let mut status = CompletionStatus::Complete;
    while let Some((i, j)) = select_pair(&s, &ord, &mut cache) {
        if iterations == max_iterations {
            status = CompletionStatus::MainBudgetExceeded;
            break;
        }
        iterations += 1;
        let ri = s[i].clone();
        let rj = s.remove(j);
        trace.push(TraceEvent::PairChosen { iter: iterations, i: ri.id, j: rj.id });
        trace.push(TraceEvent::RuleRemoved(rj.id));
        let rest = Condition::and2(rj.b(), &Condition::not(ri.b().clone()));
        if maybe_sat(&rest, n) {
            let ci = ConditionalIdentity::new(rj.p().clone(), rj.q().clone(), cond_simplify(&rest, n));
            let r = ReductionRule::new(next_id, ci, &ord).expect("same P as r_j");
            next_id += 1;
            trace.push(TraceEvent::RemainderAdded(r.id));
            history.push(r.clone());
            s.push(r);
        }
        let both = cond_simplify(&Condition::and2(ri.b(), rj.b()), n);
        let mut ci = reduce_ci(&ConditionalIdentity::new(rj.p().clone(), rj.q().clone(), both), &ri, &ord);
        trace.push(TraceEvent::Reduced { by: ri.id });
        let mut steps = 0;
        loop {
            if ci.p.is_zero() {
                break;
            }
            let delta = ci.offset(&ord);
            let mut cands: Vec<&ReductionRule> =
                s.iter().filter(|r| cmp_offset(&ord, &r.offset, &delta) == std::cmp::Ordering::Less).collect();
            cands.sort_by(|a, b| cmp_offset(&ord, &a.offset, &b.offset).then(a.id.cmp(&b.id)));
            let Some(r) = cands.into_iter().find(|r| ci_reducible(&ci, r, &ord)) else { break };
            if steps == inner_budget {
                trace.push(TraceEvent::InnerBudgetExceeded);
                break;
            }
            steps += 1;
            ci = reduce_ci(&ci, r, &ord);
            trace.push(TraceEvent::Reduced { by: r.id });
        }
        let new = convert(&ci, &ord, &mut next_id, &mut kernel, &mut trace);
        history.extend(new.iter().cloned());
        s.extend(new);
    }
    let mut system = ReductionSystem::new(ord, s, "refined");
    system.complete = status == CompletionStatus::Complete;
    CompletionOutcome { status, system, kernel_elements: kernel, trace, iterations, history }
}
