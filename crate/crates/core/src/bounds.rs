//! Weighted degree bounds φ with deg_w(u) ≤ φ(deg_w(L(u))).

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::diffop::is_homogeneous;
use crate::poly::{floor_q, fmt_q, qi, qr, Ext, LaurentPoly, Q};
use crate::rules::{ReductionRule, ReductionSystem};

#[derive(Debug, Error, PartialEq)]
pub enum BoundError {
    #[error("incompatible weight vector: deg_w(P) = {deg} for rule {rule}")]
    Incompatible { rule: String, deg: Ext },
    #[error("weight vector has {got} entries, expected {want}")]
    Dimension { got: usize, want: usize },
    #[error("family {0} needs an asserted supremum of deg_w(Q) over its members")]
    TailNotAsserted(String),
    #[error("asserted supremum {asserted} is below deg_w(Q) = {seen} of rule {rule}")]
    AssertionContradicted { rule: String, seen: Ext, asserted: Ext },
    #[error("system has no rules")]
    Empty,
    #[error("polynomial is not homogeneous w.r.t. the weights")]
    NotHomogeneous,
    #[error("composition entry {0}: λ and c must be positive")]
    NonPositive(usize),
    #[error("composition: v_{0} exceeds Σ λ_i w_i,{0}")]
    WeightCover(usize),
    #[error("composition entry {entry}: w_{j} > c·v_{j}, so deg_w(f) ≤ c·deg_v(f) may fail")]
    DegreeScale { entry: usize, j: usize },
    #[error("composition entry {0}: bound is not monotone")]
    NotMonotone(usize),
    #[error("unknown built-in bound {0}")]
    UnknownBuiltin(String),
    #[error("bound syntax: {0}")]
    Syntax(String),
}

/// A function of one extended-rational variable x.
#[derive(Debug, Clone, PartialEq)]
pub enum DegreeBoundFn {
    Const(Ext),
    /// a·x + b
    Affine(Q, Q),
    /// ⌊a·x + b⌋
    FloorAffine(Q, Q),
    /// λ·φ(x)
    Scale(Q, Box<DegreeBoundFn>),
    /// φ(c·x)
    Precompose(Q, Box<DegreeBoundFn>),
    Sum(Vec<DegreeBoundFn>),
    Max(Vec<DegreeBoundFn>),
    /// Pieces (lower threshold, φ): the last piece whose threshold is ≤ x
    /// applies. The first threshold is −∞.
    Piecewise(Vec<(Ext, DegreeBoundFn)>),
}

use DegreeBoundFn as B;

fn add(a: &Ext, b: &Ext) -> Ext {
    match (a, b) {
        (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
        (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
        (Ext::Fin(x), Ext::Fin(y)) => Ext::Fin(x + y),
    }
}

/// k·x for k ≥ 0 (0·±∞ = 0).
fn mul(k: &Q, x: &Ext) -> Ext {
    match x {
        _ if k.is_zero() => Ext::Fin(Q::zero()),
        Ext::Fin(v) => Ext::Fin(k * v),
        inf if k.is_positive() => inf.clone(),
        Ext::NegInf => Ext::PosInf,
        Ext::PosInf => Ext::NegInf,
    }
}

fn floor(x: Ext) -> Ext {
    match x {
        Ext::Fin(q) => Ext::Fin(Q::from_integer(floor_q(&q))),
        inf => inf,
    }
}

impl DegreeBoundFn {
    pub fn affine(a: Q, b: Q) -> Self {
        B::Affine(a, b)
    }

    pub fn constant(c: Q) -> Self {
        B::Const(Ext::Fin(c))
    }

    /// Exact value at x, with ±∞ propagated.
    pub fn eval_ext(&self, x: &Ext) -> Ext {
        match self {
            B::Const(c) => c.clone(),
            B::Affine(a, b) => add(&mul(a, x), &Ext::Fin(b.clone())),
            B::FloorAffine(a, b) => floor(add(&mul(a, x), &Ext::Fin(b.clone()))),
            B::Scale(l, f) => mul(l, &f.eval_ext(x)),
            B::Precompose(c, f) => f.eval_ext(&mul(c, x)),
            B::Sum(fs) => fs.iter().fold(Ext::Fin(Q::zero()), |acc, f| add(&acc, &f.eval_ext(x))),
            B::Max(fs) => fs.iter().map(|f| f.eval_ext(x)).max().unwrap_or(Ext::NegInf),
            B::Piecewise(ps) => ps.iter().rev().find(|(t, _)| t <= x).map(|(_, f)| f.eval_ext(x)).unwrap_or(Ext::NegInf),
        }
    }

    /// Collapses to (a, b) when the function is affine.
    pub fn as_affine(&self) -> Option<(Q, Q)> {
        match self {
            B::Const(Ext::Fin(c)) => Some((Q::zero(), c.clone())),
            B::Affine(a, b) => Some((a.clone(), b.clone())),
            B::Scale(l, f) => f.as_affine().map(|(a, b)| (l * a, l * b)),
            B::Precompose(c, f) => f.as_affine().map(|(a, b)| (a * c, b)),
            B::Sum(fs) => fs.iter().try_fold((Q::zero(), Q::zero()), |(a, b), f| f.as_affine().map(|(x, y)| (a + x, b + y))),
            _ => None,
        }
    }

    /// Weak monotonicity on `pairs` random ordered pairs in [-range, range].
    pub fn is_monotone_sampled<R: Rng>(&self, pairs: usize, range: i64, rng: &mut R) -> bool {
        let pt = |rng: &mut R| qr(rng.gen_range(-range * 6..=range * 6), 6);
        (0..pairs).all(|_| {
            let (a, b) = (pt(rng), pt(rng));
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            self.eval_ext(&Ext::Fin(lo)) <= self.eval_ext(&Ext::Fin(hi))
        })
    }

    /// Prefix text form, e.g. `(sum (floor 3/2 0) (const 1))`.
    pub fn to_prefix(&self) -> String {
        let ext = |e: &Ext| e.to_string();
        match self {
            B::Const(c) => format!("(const {})", ext(c)),
            B::Affine(a, b) => format!("(affine {} {})", fmt_q(a), fmt_q(b)),
            B::FloorAffine(a, b) => format!("(floor {} {})", fmt_q(a), fmt_q(b)),
            B::Scale(l, f) => format!("(scale {} {})", fmt_q(l), f.to_prefix()),
            B::Precompose(c, f) => format!("(pre {} {})", fmt_q(c), f.to_prefix()),
            B::Sum(fs) => list("sum", fs),
            B::Max(fs) => list("max", fs),
            B::Piecewise(ps) => {
                let parts: Vec<String> = ps.iter().map(|(t, f)| format!("(from {} {})", ext(t), f.to_prefix())).collect();
                format!("(piecewise {})", parts.join(" "))
            }
        }
    }

    pub fn parse_prefix(s: &str) -> Result<Self, BoundError> {
        let toks = tokenize(s);
        let mut pos = 0;
        let f = parse_fn(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(BoundError::Syntax("trailing input".into()));
        }
        Ok(f)
    }
}

fn list(head: &str, fs: &[DegreeBoundFn]) -> String {
    let parts: Vec<String> = fs.iter().map(|f| f.to_prefix()).collect();
    format!("({head} {})", parts.join(" "))
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn expect(toks: &[String], pos: &mut usize, want: &str) -> Result<(), BoundError> {
    match toks.get(*pos) {
        Some(t) if t == want => {
            *pos += 1;
            Ok(())
        }
        other => Err(BoundError::Syntax(format!("expected '{want}', found {other:?}"))),
    }
}

fn parse_ext(toks: &[String], pos: &mut usize) -> Result<Ext, BoundError> {
    let t = toks.get(*pos).ok_or_else(|| BoundError::Syntax("unexpected end".into()))?;
    *pos += 1;
    match t.as_str() {
        "-inf" => Ok(Ext::NegInf),
        "+inf" => Ok(Ext::PosInf),
        s => s.parse::<Q>().map(Ext::Fin).map_err(|_| BoundError::Syntax(format!("bad number '{s}'"))),
    }
}

fn parse_q(toks: &[String], pos: &mut usize) -> Result<Q, BoundError> {
    match parse_ext(toks, pos)? {
        Ext::Fin(q) => Ok(q),
        _ => Err(BoundError::Syntax("infinite coefficient".into())),
    }
}

fn parse_fn(toks: &[String], pos: &mut usize) -> Result<DegreeBoundFn, BoundError> {
    expect(toks, pos, "(")?;
    let head = toks.get(*pos).cloned().ok_or_else(|| BoundError::Syntax("unexpected end".into()))?;
    *pos += 1;
    let f = match head.as_str() {
        "const" => B::Const(parse_ext(toks, pos)?),
        "affine" => B::Affine(parse_q(toks, pos)?, parse_q(toks, pos)?),
        "floor" => B::FloorAffine(parse_q(toks, pos)?, parse_q(toks, pos)?),
        "scale" => B::Scale(parse_q(toks, pos)?, Box::new(parse_fn(toks, pos)?)),
        "pre" => B::Precompose(parse_q(toks, pos)?, Box::new(parse_fn(toks, pos)?)),
        "sum" | "max" | "piecewise" => {
            let mut items = Vec::new();
            let mut pieces = Vec::new();
            while toks.get(*pos).map(String::as_str) == Some("(") {
                if head == "piecewise" {
                    expect(toks, pos, "(")?;
                    expect(toks, pos, "from")?;
                    let t = parse_ext(toks, pos)?;
                    pieces.push((t, parse_fn(toks, pos)?));
                    expect(toks, pos, ")")?;
                } else {
                    items.push(parse_fn(toks, pos)?);
                }
            }
            match head.as_str() {
                "sum" => B::Sum(items),
                "max" => B::Max(items),
                _ => B::Piecewise(pieces),
            }
        }
        h => return Err(BoundError::Syntax(format!("unknown node '{h}'"))),
    };
    expect(toks, pos, ")")?;
    Ok(f)
}

impl fmt::Display for DegreeBoundFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.as_affine() {
            return f.write_str(&affine_text(&a, &b, "x"));
        }
        match self {
            B::Const(c) => write!(f, "{c}"),
            B::FloorAffine(a, b) => write!(f, "floor({})", affine_text(a, b, "x")),
            B::Scale(l, g) => write!(f, "{}*({g})", fmt_q(l)),
            B::Precompose(c, g) => write!(f, "({g})[x -> {}*x]", fmt_q(c)),
            B::Sum(gs) => {
                let parts: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                f.write_str(&parts.join(" + "))
            }
            B::Max(gs) => {
                let parts: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                write!(f, "max({})", parts.join(", "))
            }
            B::Piecewise(ps) => {
                let parts: Vec<String> = ps
                    .iter()
                    .enumerate()
                    .map(|(i, (t, g))| match ps.get(i + 1) {
                        Some((next, _)) if *t == Ext::NegInf => format!("{g} if x < {next}"),
                        Some((next, _)) => format!("{g} if {t} <= x < {next}"),
                        None if *t == Ext::NegInf => g.to_string(),
                        None => format!("{g} if x >= {t}"),
                    })
                    .collect();
                f.write_str(&parts.join("; "))
            }
            B::Affine(..) => unreachable!("handled by as_affine"),
        }
    }
}

fn affine_text(a: &Q, b: &Q, x: &str) -> String {
    let lin = if a.is_zero() {
        return fmt_q(b);
    } else if a.is_one() {
        x.to_string()
    } else if *a == -Q::one() {
        format!("-{x}")
    } else {
        format!("{}*{x}", fmt_q(a))
    };
    if b.is_zero() {
        lin
    } else if b.is_negative() {
        format!("{lin} - {}", fmt_q(&-b))
    } else {
        format!("{lin} + {}", fmt_q(b))
    }
}

/// φ(x); the degree of the zero polynomial is −∞ and maps to −∞.
pub fn bound_eval(phi: &DegreeBoundFn, x: &Ext) -> Ext {
    if *x == Ext::NegInf {
        return Ext::NegInf;
    }
    phi.eval_ext(x)
}

fn check_weights(w: &[Q], n: usize) -> Result<(), BoundError> {
    if w.len() != n {
        return Err(BoundError::Dimension { got: w.len(), want: n });
    }
    Ok(())
}

fn inspect(r: &ReductionRule, w: &[Q], sup: &mut Ext) -> Result<(), BoundError> {
    let dp = r.p().deg_w(w);
    if dp != Ext::Fin(Q::zero()) {
        return Err(BoundError::Incompatible { rule: r.label(), deg: dp });
    }
    let dq = r.q().deg_w(w);
    if dq > *sup {
        *sup = dq;
    }
    Ok(())
}

/// φ(x) = x + sup deg_w(Q) over the rules of `sys`.
///
/// Finite rules and family members up to `family_index_cap` are checked for
/// deg_w(P) = 0 and contribute their deg_w(Q). Family members beyond the cap
/// are covered by `asserted_tail_sup`, which must dominate what was seen.
pub fn bound_from_system(
    sys: &ReductionSystem,
    w: &[Q],
    family_index_cap: usize,
    asserted_tail_sup: Option<Ext>,
) -> Result<DegreeBoundFn, BoundError> {
    check_weights(w, sys.n())?;
    let mut sup = Ext::NegInf;
    for r in &sys.rules {
        inspect(r, w, &mut sup)?;
    }
    for fam in &sys.families {
        let asserted = asserted_tail_sup.clone().ok_or_else(|| BoundError::TailNotAsserted(fam.name().into()))?;
        for j in fam.first_index()..=family_index_cap {
            let r = fam.member(j);
            let mut seen = Ext::NegInf;
            inspect(&r, w, &mut seen)?;
            if seen > asserted {
                return Err(BoundError::AssertionContradicted { rule: r.label(), seen, asserted });
            }
        }
        sup = sup.max(asserted);
    }
    match sup {
        Ext::Fin(s) => Ok(B::Affine(Q::one(), s)),
        Ext::NegInf if sys.rules.is_empty() && sys.families.is_empty() => Err(BoundError::Empty),
        other => Ok(B::Sum(vec![B::Affine(Q::one(), Q::zero()), B::Const(other)])),
    }
}

/// φ(x) = x − deg_w(p) for w-homogeneous p.
pub fn bound_homogeneous(p: &LaurentPoly, w: &[Q]) -> Result<DegreeBoundFn, BoundError> {
    check_weights(w, p.n())?;
    if !is_homogeneous(p, w) {
        return Err(BoundError::NotHomogeneous);
    }
    match p.deg_w(w) {
        Ext::Fin(d) => Ok(B::Affine(Q::one(), -d)),
        _ => Ok(B::Affine(Q::one(), Q::zero())),
    }
}

/// One input of `bound_compose`: a bound φ w.r.t. w, used as λ·φ(c·x).
#[derive(Debug, Clone)]
pub struct ComposeEntry {
    pub w: Vec<Q>,
    pub phi: DegreeBoundFn,
    pub lambda: Q,
    pub c: Q,
}

/// φ(x) = Σ λᵢ·φᵢ(cᵢ·x), a bound w.r.t. v.
///
/// Checked: λᵢ, cᵢ > 0; v_j ≤ Σ λᵢ·w_{i,j}; w_{i,j} ≤ cᵢ·v_j (which gives
/// deg_{wᵢ}(f) ≤ cᵢ·deg_v(f) for polynomials); each φᵢ monotone on samples.
pub fn bound_compose(entries: &[ComposeEntry], v: &[Q]) -> Result<DegreeBoundFn, BoundError> {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    for (i, e) in entries.iter().enumerate() {
        check_weights(&e.w, v.len())?;
        if !e.lambda.is_positive() || !e.c.is_positive() {
            return Err(BoundError::NonPositive(i));
        }
        if let Some(j) = (0..v.len()).find(|&j| e.w[j] > &e.c * &v[j]) {
            return Err(BoundError::DegreeScale { entry: i, j });
        }
        if !e.phi.is_monotone_sampled(100, 50, &mut rng) {
            return Err(BoundError::NotMonotone(i));
        }
    }
    for (j, vj) in v.iter().enumerate() {
        let cover: Q = entries.iter().map(|e| &e.lambda * &e.w[j]).sum();
        if *vj > cover {
            return Err(BoundError::WeightCover(j));
        }
    }
    let parts: Vec<DegreeBoundFn> = entries
        .iter()
        .map(|e| B::Scale(e.lambda.clone(), Box::new(B::Precompose(e.c.clone(), Box::new(e.phi.clone())))))
        .collect();
    Ok(if parts.len() == 1 { parts.into_iter().next().expect("one part") } else { B::Sum(parts) })
}

/// Turns a bound w.r.t. w into one w.r.t. v with λ = max vᵢ/wᵢ and
/// c = max wᵢ/vᵢ (both vectors positive).
pub fn bound_rescale(w: &[Q], phi: &DegreeBoundFn, v: &[Q]) -> Result<DegreeBoundFn, BoundError> {
    check_weights(w, v.len())?;
    if w.iter().chain(v).any(|x| !x.is_positive()) {
        return Err(BoundError::NonPositive(0));
    }
    let lambda = v.iter().zip(w).map(|(a, b)| a / b).max().expect("nonempty");
    let c = w.iter().zip(v).map(|(a, b)| a / b).max().expect("nonempty");
    bound_compose(&[ComposeEntry { w: w.to_vec(), phi: phi.clone(), lambda, c }], v)
}

/// 2⌊x/2⌋ + k
fn even_floor(k: i64) -> DegreeBoundFn {
    B::Sum(vec![B::Scale(qi(2), Box::new(B::FloorAffine(qr(1, 2), Q::zero()))), B::constant(qi(k))])
}

/// The closed-form bounds for the built-in families, with their weights.
pub fn builtin_bound(name: &str) -> Result<(Vec<Q>, DegreeBoundFn), BoundError> {
    let w = |v: [i64; 3]| v.iter().map(|&x| qi(x)).collect::<Vec<Q>>();
    Ok(match name {
        "airy-w201" => (w([2, 0, 1]), B::Affine(qi(1), qi(2))),
        "airy-w2m10" => {
            (w([2, -1, 0]), B::Piecewise(vec![(Ext::NegInf, B::FloorAffine(qi(1), qi(-1))), (Ext::Fin(qi(-2)), even_floor(2))]))
        }
        "airy-total" => (w([1, 1, 1]), B::Sum(vec![B::FloorAffine(qr(3, 2), Q::zero()), B::constant(qi(1))])),
        "cei1-w" => (w([1, 0, 2]), B::Affine(qi(1), qi(-2))),
        "cei2-w1m1m1" => (
            w([1, -1, -1]),
            B::Piecewise(vec![
                (Ext::NegInf, B::FloorAffine(qi(1), Q::zero())),
                (Ext::Fin(Q::zero()), B::constant(Q::zero())),
                (Ext::Fin(qi(3)), B::FloorAffine(qi(1), qi(-2))),
            ]),
        ),
        "cei2-total" => {
            (w([1, 1, 1]), B::Piecewise(vec![(Ext::NegInf, B::Const(Ext::NegInf)), (Ext::Fin(qi(2)), even_floor(0))]))
        }
        _ => return Err(BoundError::UnknownBuiltin(name.into())),
    })
}

pub const BUILTIN_BOUNDS: [&str; 6] = ["airy-w201", "airy-w2m10", "airy-total", "cei1-w", "cei2-w1m1m1", "cei2-total"];

#[cfg(test)]
mod tests;
