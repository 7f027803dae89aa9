//! Per-conjunct analysis: constant folding, propagation of pinned variables,
//! elimination through linear equations, integer interval reasoning on
//! linear forms, and a bounded box search as the last resort.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{Condition, Rel, SatResult};
use crate::poly::{ParamPoly, Q};

/// Maximum number of DNF conjuncts before giving up with UNKNOWN.
pub const DNF_CAP: usize = 256;
/// Default side length of the witness search box.
pub const DEFAULT_BOX: i64 = 32;
const SEARCH_LIMIT: u64 = 300_000;
const ROOT_SCAN_LIMIT: i64 = 100_000;

type Atom = (ParamPoly, Rel);

/// Allowed integer values of a variable or a linear form.
#[derive(Clone, Debug, Default, PartialEq)]
struct Dom {
    lo: Option<i64>,
    hi: Option<i64>,
    excl: BTreeSet<i64>,
    finite: Option<BTreeSet<i64>>,
}

impl Dom {
    fn nat() -> Self {
        Dom { lo: Some(0), ..Default::default() }
    }

    fn ge(&mut self, v: i64) {
        self.lo = Some(self.lo.map_or(v, |l| l.max(v)));
    }

    fn le(&mut self, v: i64) {
        self.hi = Some(self.hi.map_or(v, |h| h.min(v)));
    }

    fn restrict(&mut self, set: BTreeSet<i64>) {
        self.finite = Some(match self.finite.take() {
            None => set,
            Some(f) => f.intersection(&set).copied().collect(),
        });
    }

    fn in_range(&self, v: i64) -> bool {
        self.lo.is_none_or(|l| v >= l) && self.hi.is_none_or(|h| v <= h)
    }

    fn contains(&self, v: i64) -> bool {
        self.in_range(v) && !self.excl.contains(&v) && self.finite.as_ref().is_none_or(|f| f.contains(&v))
    }

    /// All allowed values when there are few of them.
    fn enumerate_small(&self) -> Option<Vec<i64>> {
        if let Some(f) = &self.finite {
            return Some(f.iter().copied().filter(|&v| self.contains(v)).collect());
        }
        let (lo, hi) = (self.lo?, self.hi?);
        if hi < lo {
            return Some(vec![]);
        }
        if (hi - lo) as u64 > self.excl.len() as u64 + 2 {
            return None;
        }
        Some((lo..=hi).filter(|v| !self.excl.contains(v)).collect())
    }

    fn is_empty(&self) -> bool {
        match self.enumerate_small() {
            Some(v) => v.is_empty(),
            None => false,
        }
    }

    fn single(&self) -> Option<i64> {
        match self.enumerate_small() {
            Some(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    fn min(&self) -> Option<i64> {
        if let Some(f) = &self.finite {
            return f.iter().copied().find(|&v| self.contains(v));
        }
        let mut v = self.lo?;
        while self.excl.contains(&v) {
            v += 1;
        }
        if self.in_range(v) {
            Some(v)
        } else {
            None
        }
    }

    /// Allowed values within [from, to].
    fn values_in(&self, from: i64, to: i64) -> Vec<i64> {
        if let Some(f) = &self.finite {
            return f.iter().copied().filter(|&v| v >= from && v <= to && self.contains(v)).collect();
        }
        let a = self.lo.map_or(from, |l| l.max(from));
        let b = self.hi.map_or(to, |h| h.min(to));
        (a..=b).filter(|&v| self.contains(v)).collect()
    }
}

fn canon((p, r): Atom) -> Atom {
    let (c, s) = p.primitive();
    if c.is_negative() {
        (s, r.mirror())
    } else {
        (s, r)
    }
}

fn q_to_i64(q: &BigInt) -> Option<i64> {
    q.to_i64().filter(|v| v.abs() < i64::MAX / 4)
}

/// Nonnegative integer roots of a univariate polynomial given densely;
/// None when the search would be too large.
fn nonneg_int_roots(dense: &[Q]) -> Option<Vec<i64>> {
    let m = dense.iter().position(|c| !c.is_zero())?;
    let mut roots = Vec::new();
    if m > 0 {
        roots.push(0);
    }
    let q = &dense[m..];
    if q.len() == 1 {
        return Some(roots);
    }
    let den = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let bound: BigInt = ints[..ints.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default() / &lead + 1;
    let bound = bound.to_i64().filter(|&b| b <= ROOT_SCAN_LIMIT)?;
    let a0 = ints[0].abs();
    for r in 1..=bound {
        let rb = BigInt::from(r);
        if !(&a0 % &rb).is_zero() {
            continue;
        }
        let mut acc = BigInt::zero();
        for c in ints.iter().rev() {
            acc = acc * &rb + c;
        }
        if acc.is_zero() {
            roots.push(r);
        }
    }
    Some(roots)
}

enum Outcome {
    Unsat,
    Open(Open),
}

#[derive(Debug)]
pub(super) struct Open {
    fixed: BTreeMap<usize, i64>,
    elim: Vec<(usize, ParamPoly)>,
    doms: BTreeMap<usize, Dom>,
    residual: Vec<Atom>,
}

enum Applied {
    Yes,
    AlwaysTrue,
    AlwaysFalse,
    Unrepresentable,
}

/// Splits p rel 0 into s rel' c with s primitive and constant-free.
fn split(p: &ParamPoly, r: Rel) -> (ParamPoly, Rel, Q) {
    let k = p.constant_term();
    let s = p - &ParamPoly::constant(k.clone());
    let (a, s0) = s.primitive();
    let rel = if a.is_negative() { r.mirror() } else { r };
    (s0, rel, -k / a)
}

fn initial_dom(s0: &ParamPoly) -> Dom {
    if s0.terms().all(|(_, c)| c.is_positive()) {
        Dom::nat()
    } else {
        Dom::default()
    }
}

fn apply(dom: &mut Dom, rel: Rel, c: &Q) -> Applied {
    let fl = c.floor().to_integer();
    let ce = c.ceil().to_integer();
    let int = c.is_integer();
    let val = |b: &BigInt| q_to_i64(b);
    match rel {
        Rel::Eq => {
            if !int {
                return Applied::AlwaysFalse;
            }
            match val(&fl) {
                Some(v) => dom.restrict([v].into_iter().collect()),
                None => return Applied::Unrepresentable,
            }
        }
        Rel::Ne => {
            if !int {
                return Applied::AlwaysTrue;
            }
            match val(&fl) {
                Some(v) => {
                    dom.excl.insert(v);
                }
                None => return Applied::Unrepresentable,
            }
        }
        Rel::Ge | Rel::Gt => {
            let b = if rel == Rel::Ge { ce } else { fl + 1 };
            match val(&b) {
                Some(v) => dom.ge(v),
                None => return Applied::Unrepresentable,
            }
        }
        Rel::Le | Rel::Lt => {
            let b = if rel == Rel::Le { fl } else { ce - 1 };
            match val(&b) {
                Some(v) => dom.le(v),
                None => return Applied::Unrepresentable,
            }
        }
    }
    Applied::Yes
}

fn single_var(s: &ParamPoly) -> Option<usize> {
    if s.num_terms() != 1 {
        return None;
    }
    let (e, c) = s.terms().next().unwrap();
    if !c.is_one() || e.iter().sum::<u32>() != 1 {
        return None;
    }
    Some(e.len() - 1)
}

fn analyze(mut atoms: Vec<Atom>) -> Outcome {
    let mut fixed: BTreeMap<usize, i64> = BTreeMap::new();
    let mut elim: Vec<(usize, ParamPoly)> = Vec::new();

    'outer: loop {
        atoms = strip_content(std::mem::take(&mut atoms));
        let mut next: Vec<Atom> = Vec::new();
        for (p, r) in atoms.drain(..) {
            match p.constant_value() {
                Some(c) => {
                    if !r.holds(&c) {
                        return Outcome::Unsat;
                    }
                }
                None => {
                    let a = canon((p, r));
                    if !next.contains(&a) {
                        next.push(a);
                    }
                }
            }
        }
        atoms = next;

        // Pin variables from univariate equations with a unique root in N.
        for idx in 0..atoms.len() {
            if atoms[idx].1 != Rel::Eq {
                continue;
            }
            if let Some((Some(v), dense)) = atoms[idx].0.as_univariate() {
                match nonneg_int_roots(&dense) {
                    Some(roots) if roots.is_empty() => return Outcome::Unsat,
                    Some(roots) if roots.len() == 1 => {
                        atoms.remove(idx);
                        pin(&mut atoms, &mut elim, v, roots[0]);
                        fixed.insert(v, roots[0]);
                        continue 'outer;
                    }
                    _ => {}
                }
            }
        }

        // Eliminate one variable through a multivariate linear equation.
        for idx in 0..atoms.len() {
            if atoms[idx].1 != Rel::Eq {
                continue;
            }
            if let Some((lin, _)) = atoms[idx].0.as_linear() {
                if lin.len() < 2 {
                    continue;
                }
                let (&v, a) = lin.iter().next_back().unwrap();
                let (p, _) = atoms.remove(idx);
                let expr = (&p - &ParamPoly::var(v).scale(a)).scale(&(-a.recip()));
                for at in atoms.iter_mut() {
                    at.0 = at.0.subst_poly(v, &expr);
                }
                for (_, e) in elim.iter_mut() {
                    *e = e.subst_poly(v, &expr);
                }
                elim.push((v, expr.clone()));
                atoms.push((expr, Rel::Ge));
                continue 'outer;
            }
        }

        // Interval reasoning on linear forms (and plain variables).
        let mut groups: HashMap<ParamPoly, Dom> = HashMap::new();
        let mut extra: BTreeMap<usize, Dom> = BTreeMap::new();
        let mut residual: Vec<Atom> = Vec::new();
        for (p, r) in &atoms {
            if let Some((Some(v), dense)) = p.as_univariate() {
                if dense.len() > 2 && matches!(r, Rel::Eq | Rel::Ne) {
                    if let Some(roots) = nonneg_int_roots(&dense) {
                        let d = extra.entry(v).or_insert_with(Dom::nat);
                        if *r == Rel::Eq {
                            d.restrict(roots.into_iter().collect());
                        } else {
                            d.excl.extend(roots);
                        }
                        continue;
                    }
                }
            }
            let (s0, rel, c) = split(p, *r);
            let is_var = single_var(&s0).is_some();
            let dom = groups.entry(s0.clone()).or_insert_with(|| initial_dom(&s0));
            match apply(dom, rel, &c) {
                Applied::Yes => {
                    if !is_var {
                        residual.push((p.clone(), *r));
                    }
                }
                Applied::AlwaysTrue => {}
                Applied::AlwaysFalse => return Outcome::Unsat,
                Applied::Unrepresentable => residual.push((p.clone(), *r)),
            }
        }
        if groups.values().any(|d| d.is_empty()) {
            return Outcome::Unsat;
        }
        let mut doms: BTreeMap<usize, Dom> = BTreeMap::new();
        for (s0, d) in groups {
            if let Some(v) = single_var(&s0) {
                doms.insert(v, d);
            }
        }
        for (v, d) in extra {
            let e = doms.entry(v).or_insert_with(Dom::nat);
            if let Some(f) = d.finite {
                e.restrict(f);
            }
            e.excl.extend(d.excl);
        }
        for (&v, d) in &doms {
            if d.is_empty() {
                return Outcome::Unsat;
            }
            if let Some(val) = d.single() {
                pin(&mut atoms, &mut elim, v, val);
                fixed.insert(v, val);
                continue 'outer;
            }
        }
        residual.sort_by_key(|(p, r)| (p.to_text(), *r));
        return Outcome::Open(Open { fixed, elim, doms, residual });
    }
}

/// Monomial content x^m of p and the cofactor p / x^m.
fn content(p: &ParamPoly) -> (Vec<u32>, ParamPoly) {
    let mut m: Option<Vec<u32>> = None;
    for (e, _) in p.terms() {
        m = Some(match m {
            None => e.clone(),
            Some(cur) => (0..cur.len().min(e.len())).map(|i| cur[i].min(e[i])).collect(),
        });
    }
    let m = m.unwrap_or_default();
    if m.iter().all(|&k| k == 0) {
        return (m, p.clone());
    }
    let q = ParamPoly::from_terms(
        p.terms().map(|(e, c)| (e.iter().enumerate().map(|(i, &k)| k - m.get(i).copied().unwrap_or(0)).collect(), c.clone())),
    );
    (m, q)
}

/// Splits x^m·q ≠ 0 into x_i ≠ 0 and q ≠ 0, and drops factors x_i from
/// equations when x_i ≠ 0 is known.
fn strip_content(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    let mut nonzero = BTreeSet::new();
    let mut eqs = Vec::new();
    for (p, r) in atoms {
        let (m, q) = content(&p);
        match r {
            Rel::Ne if m.iter().any(|&k| k > 0) => {
                for (i, &k) in m.iter().enumerate() {
                    if k > 0 {
                        nonzero.insert(i);
                        out.push((ParamPoly::var(i), Rel::Ne));
                    }
                }
                if q.constant_value().is_none() {
                    out.push(canon((q, Rel::Ne)));
                }
            }
            Rel::Ne => {
                if let Some(v) = single_var(&p) {
                    nonzero.insert(v);
                }
                out.push((p, r));
            }
            Rel::Eq if m.iter().any(|&k| k > 0) => eqs.push((p, m, q)),
            _ => out.push((p, r)),
        }
    }
    for (p, m, q) in eqs {
        if m.iter().enumerate().all(|(i, &k)| k == 0 || nonzero.contains(&i)) {
            out.push(canon((q, Rel::Eq)));
        } else {
            out.push((p, Rel::Eq));
        }
    }
    let mut dedup: Vec<Atom> = Vec::new();
    for a in out {
        if !dedup.contains(&a) {
            dedup.push(a);
        }
    }
    dedup
}

fn pin(atoms: &mut [Atom], elim: &mut [(usize, ParamPoly)], v: usize, val: i64) {
    let q = Q::from_integer(val.into());
    for at in atoms.iter_mut() {
        at.0 = at.0.subst_value(v, &q);
    }
    for (_, e) in elim.iter_mut() {
        *e = e.subst_value(v, &q);
    }
}

impl Open {
    fn exact(&self) -> bool {
        self.residual.is_empty() && self.elim.is_empty()
    }

    fn exact_witness(&self, n: usize) -> Option<Vec<i64>> {
        let mut w = vec![0; n];
        for v in 0..n {
            w[v] = match (self.fixed.get(&v), self.doms.get(&v)) {
                (Some(&x), _) => x,
                (None, Some(d)) => d.min()?,
                (None, None) => 0,
            };
        }
        Some(w)
    }

    fn complete(&self, w: &mut [i64]) -> bool {
        for (&v, &x) in &self.fixed {
            w[v] = x;
        }
        for (v, e) in self.elim.iter().rev() {
            let x: Vec<Q> = w.iter().map(|&a| Q::from_integer(a.into())).collect();
            let val = e.eval_q(&x);
            if !val.is_integer() || val.is_negative() {
                return false;
            }
            match val.to_integer().to_i64() {
                Some(k) => w[*v] = k,
                None => return false,
            }
        }
        true
    }

    fn search(&self, n: usize, box_bound: i64, ok: &dyn Fn(&[i64]) -> bool) -> Option<Vec<i64>> {
        let elim_vars: BTreeSet<usize> = self.elim.iter().map(|(v, _)| *v).collect();
        let free: Vec<usize> = (0..n).filter(|v| !self.fixed.contains_key(v) && !elim_vars.contains(v)).collect();
        let ranges: Vec<Vec<i64>> = free
            .iter()
            .map(|v| match self.doms.get(v) {
                Some(d) => d.values_in(0, box_bound),
                None => (0..=box_bound).collect(),
            })
            .collect();
        let total: u64 = ranges.iter().map(|r| r.len() as u64).fold(1, |a, b| a.saturating_mul(b));
        if total == 0 {
            return None;
        }
        let total = total.min(SEARCH_LIMIT);
        let mut idx = vec![0usize; free.len()];
        let mut w = vec![0i64; n];
        for _ in 0..total {
            for (k, &v) in free.iter().enumerate() {
                w[v] = ranges[k][idx[k]];
            }
            if self.complete(&mut w) && ok(&w) {
                return Some(w);
            }
            // Odometer increment, last variable fastest.
            let mut k = free.len();
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < ranges[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
        None
    }

    fn to_condition(&self) -> Condition {
        let mut parts = Vec::new();
        let mut fixed = self.fixed.clone();
        let mut elim = Vec::new();
        for (v, e) in &self.elim {
            match e.constant_value().and_then(|c| c.is_integer().then(|| c.to_integer())) {
                Some(c) if c >= 0.into() => {
                    fixed.insert(*v, c.try_into().expect("small constant"));
                }
                _ => elim.push((*v, e.clone())),
            }
        }
        for (&v, &x) in fixed.iter().rev() {
            parts.push(Condition::var_eq(v, x));
        }
        elim.sort_by(|a, b| b.0.cmp(&a.0));
        for (v, e) in elim {
            let p = (&ParamPoly::var(v) - &e).normalized();
            parts.push(Condition::Atom(p, Rel::Eq));
        }
        for (&v, d) in self.doms.iter().rev() {
            if let Some(vals) = d.enumerate_small().filter(|_| d.finite.is_some()) {
                let mut prod = ParamPoly::one();
                for r in vals {
                    prod = &prod * &ParamPoly::linear(v, 1, -r);
                }
                parts.push(Condition::eq0(prod));
                continue;
            }
            if let Some(lo) = d.lo.filter(|&l| l > 0) {
                parts.push(Condition::var_ge(v, lo));
            }
            if let Some(hi) = d.hi {
                parts.push(Condition::atom(ParamPoly::linear(v, 1, -hi), Rel::Le));
            }
            for &e in &d.excl {
                if d.in_range(e) {
                    parts.push(Condition::var_ne(v, e));
                }
            }
        }
        for (p, r) in &self.residual {
            parts.push(Condition::atom(p.clone(), *r));
        }
        Condition::and(parts)
    }
}

fn effective_n(b: &Condition, n: usize) -> usize {
    n.max(b.max_var().map_or(0, |v| v + 1))
}

fn box_search(b: &Condition, n: usize, box_bound: i64) -> Option<Vec<i64>> {
    let whole = Open { fixed: BTreeMap::new(), elim: vec![], doms: BTreeMap::new(), residual: vec![] };
    whole.search(n, box_bound, &|a| b.eval(a))
}

pub(super) fn sat(b: &Condition, n: usize, box_bound: i64) -> SatResult {
    let n = effective_n(b, n);
    let Some(conjs) = b.dnf(DNF_CAP) else {
        return match box_search(b, n, box_bound) {
            Some(w) => SatResult::Sat(w),
            None => SatResult::Unknown,
        };
    };
    let mut unknown = false;
    for conj in conjs {
        let Outcome::Open(o) = analyze(conj.clone()) else { continue };
        if o.exact() {
            if let Some(w) = o.exact_witness(n) {
                if b.eval(&w) {
                    return SatResult::Sat(w);
                }
            }
        }
        let holds = |a: &[i64]| conj.iter().all(|(p, r)| r.holds(&p.eval(a)));
        if let Some(w) = o.search(n, box_bound, &holds) {
            if b.eval(&w) {
                return SatResult::Sat(w);
            }
        }
        unknown = true;
    }
    if unknown {
        SatResult::Unknown
    } else {
        SatResult::Unsat
    }
}

pub(super) fn simplify(b: &Condition, n: usize) -> Condition {
    let _ = n;
    let Some(conjs) = b.dnf(DNF_CAP) else {
        return b.nnf();
    };
    let mut outs: Vec<Condition> = Vec::new();
    for conj in conjs {
        match analyze(conj) {
            Outcome::Unsat => {}
            Outcome::Open(o) => {
                let c = o.to_condition();
                if c == Condition::True {
                    return Condition::True;
                }
                if !outs.contains(&c) {
                    outs.push(c);
                }
            }
        }
    }
    Condition::or(outs)
}

pub(super) fn sample<R: Rng>(b: &Condition, n: usize, count: usize, spread: i64, rng: &mut R) -> Vec<Vec<i64>> {
    let n = effective_n(b, n);
    let mut out = Vec::new();
    let opens: Vec<Open> = match b.dnf(DNF_CAP) {
        Some(conjs) => conjs
            .into_iter()
            .filter_map(|c| match analyze(c) {
                Outcome::Open(o) => Some(o),
                Outcome::Unsat => None,
            })
            .collect(),
        None => vec![Open { fixed: BTreeMap::new(), elim: vec![], doms: BTreeMap::new(), residual: vec![] }],
    };
    if opens.is_empty() {
        return out;
    }
    for _ in 0..count * 50 {
        if out.len() == count {
            break;
        }
        let o = &opens[rng.gen_range(0..opens.len())];
        let elim_vars: BTreeSet<usize> = o.elim.iter().map(|(v, _)| *v).collect();
        let mut w = vec![0i64; n];
        for v in 0..n {
            if o.fixed.contains_key(&v) || elim_vars.contains(&v) {
                continue;
            }
            let d = o.doms.get(&v).cloned().unwrap_or_else(Dom::nat);
            let lo = d.lo.unwrap_or(0).max(0);
            let vals = d.values_in(lo, lo + spread);
            if vals.is_empty() {
                continue;
            }
            w[v] = vals[rng.gen_range(0..vals.len())];
        }
        if o.complete(&mut w) && b.eval(&w) {
            out.push(w);
        }
    }
    out
}
