//! Line-oriented problem files.
//!
//! ```text
//! # x and tan(x)
//! [vars] t1 t2
//! [deriv] t1 = 1
//! [deriv] t2 = t2^2 + 1
//! [order] lex
//! [v] t2^2 + 1
//! [f0] t1
//! ```
//!
//! A section header may carry its content on the same line; each following
//! line without a header is another entry of the same section. `[f0]` and `[f]` hold either
//! a polynomial right-hand side of L(u) = f or an integrand `num / den`.

use std::fmt::Write as _;

use crate::diffop::{build_p, DerivationSpec, DiffError, OperatorSpec};
use crate::poly::{div_poly, fmt_q, parse_fraction, parse_poly, MonomialOrder, Poly, PolyError, Printer, Q};

use crate::completion::{DEFAULT_INNER_BUDGET, DEFAULT_MAX_ITERATIONS};
use crate::engine::DEFAULT_STEP_BUDGET;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ProblemError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    Lex,
    Matrix(Vec<Vec<Q>>),
}

/// Right-hand side of L(u) = f, or an integrand for ∂(u/v) = num/den.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Rhs(Poly),
    Integrand(Poly, Poly),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub max_iter: usize,
    pub inner_budget: usize,
    pub steps: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self { max_iter: DEFAULT_MAX_ITERATIONS, inner_budget: DEFAULT_INNER_BUDGET, steps: DEFAULT_STEP_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    /// ∂t_i as num/den, in variable order.
    pub derivs: Vec<(Poly, Poly)>,
    pub order: OrderSpec,
    pub v: Poly,
    pub f0: Option<Target>,
    pub fs: Vec<Target>,
    pub weights: Vec<Vec<Q>>,
    pub budgets: Budgets,
}

impl ProblemFile {
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn derivation(&self) -> DerivationSpec {
        DerivationSpec::new(self.vars.clone(), self.derivs.clone()).expect("validated on parse")
    }

    pub fn operator(&self) -> OperatorSpec {
        build_p(&self.derivation(), &self.v).expect("validated on parse")
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        match &self.order {
            OrderSpec::Lex => MonomialOrder::lex(self.n()),
            OrderSpec::Matrix(m) => MonomialOrder::new(m.clone()).expect("validated on parse"),
        }
    }

    /// The polynomial f with L(u) = f equivalent to the target.
    pub fn rhs(&self, t: &Target) -> Result<Poly, DiffError> {
        match t {
            Target::Rhs(p) => Ok(p.clone()),
            Target::Integrand(num, den) => self.operator().integrand_to_rhs(num, den),
        }
    }

    /// The integrand num/den for ∂(u/v) equivalent to the target.
    pub fn integrand(&self, t: &Target) -> (Poly, Poly) {
        match t {
            Target::Integrand(num, den) => (num.clone(), den.clone()),
            Target::Rhs(f) => {
                // ∂(u/v) = gcd(v, ∂̃v)·L(u) / (den(∂)·v²)
                let op = self.operator();
                let g = div_poly(&op.v, &op.v_g).expect("v_g divides v");
                (&g * f, &(&op.v * &op.v) * op.deriv.den_d())
            }
        }
    }

    /// Canonical text; parsing it yields an equal problem.
    pub fn to_text(&self) -> String {
        let pr = Printer::new(&self.vars);
        let frac = |num: &Poly, den: &Poly| {
            if *den == Poly::one(num.n()) {
                pr.poly(num)
            } else {
                format!("({}) / ({})", pr.poly(num), pr.poly(den))
            }
        };
        let target = |t: &Target| match t {
            Target::Rhs(p) => pr.poly(p),
            Target::Integrand(num, den) => format!("({}) / ({})", pr.poly(num), pr.poly(den)),
        };
        let mut s = String::new();
        writeln!(s, "[vars] {}", self.vars.join(" ")).unwrap();
        for (name, (num, den)) in self.vars.iter().zip(&self.derivs) {
            writeln!(s, "[deriv] {name} = {}", frac(num, den)).unwrap();
        }
        match &self.order {
            OrderSpec::Lex => writeln!(s, "[order] lex").unwrap(),
            OrderSpec::Matrix(m) => {
                let rows: Vec<String> = m.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(" ")).collect();
                writeln!(s, "[order] matrix {}", rows.join("; ")).unwrap();
            }
        }
        writeln!(s, "[v] {}", pr.poly(&self.v)).unwrap();
        if let Some(f0) = &self.f0 {
            writeln!(s, "[f0] {}", target(f0)).unwrap();
        }
        for f in &self.fs {
            writeln!(s, "[f] {}", target(f)).unwrap();
        }
        for w in &self.weights {
            writeln!(s, "[weights] {}", w.iter().map(fmt_q).collect::<Vec<_>>().join(" ")).unwrap();
        }
        if self.budgets != Budgets::default() {
            let b = &self.budgets;
            writeln!(s, "[budgets] max-iter={} inner-budget={} steps={}", b.max_iter, b.inner_budget, b.steps).unwrap();
        }
        s
    }
}

/// A piece of section content with its position in the file.
struct Item<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

impl Item<'_> {
    fn err(&self, msg: impl Into<String>) -> ProblemError {
        ProblemError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn poly_err(&self, e: PolyError) -> ProblemError {
        match e {
            PolyError::Syntax { pos, msg } => ProblemError { line: self.line, col: self.col + pos, msg },
            other => self.err(other.to_string()),
        }
    }
}

const SECTIONS: [&str; 8] = ["vars", "deriv", "order", "v", "f0", "f", "weights", "budgets"];

pub fn parse_problem_file(path: &std::path::Path) -> Result<ProblemFile, ProblemError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| ProblemError { line: 0, col: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut items: Vec<(&str, Item)> = Vec::new();
    let mut current: Option<&str> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut rest = body;
        let mut col = 1;
        let trimmed = rest.trim_start();
        if let Some(after) = trimmed.strip_prefix('[') {
            let close = after.find(']').ok_or(ProblemError {
                line,
                col: body.len() - trimmed.len() + 1,
                msg: "unterminated section header".into(),
            })?;
            let name = after[..close].trim();
            let Some(&sec) = SECTIONS.iter().find(|s| **s == name) else {
                return Err(ProblemError { line, col: body.len() - trimmed.len() + 2, msg: format!("unknown section [{name}]") });
            };
            current = Some(sec);
            let used = body.len() - trimmed.len() + 1 + close + 1;
            rest = &body[used..];
            col = used + 1;
        }
        let lead = rest.len() - rest.trim_start().len();
        let content = rest.trim();
        if content.is_empty() {
            continue;
        }
        let Some(sec) = current else {
            return Err(ProblemError { line, col: col + lead, msg: "content before the first section".into() });
        };
        items.push((sec, Item { line, col: col + lead, text: content }));
    }
    build(items)
}

fn only<'a, 'b>(items: &'b [(&str, Item<'a>)], sec: &str) -> Result<Option<&'b Item<'a>>, ProblemError> {
    let mut found = items.iter().filter(|(s, _)| *s == sec).map(|(_, i)| i);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(dup.err(format!("section [{sec}] given twice")));
    }
    Ok(first)
}

fn parse_q(item: &Item, tok: &str) -> Result<Q, ProblemError> {
    tok.parse::<Q>().map_err(|_| item.err(format!("expected a rational number, found `{tok}`")))
}

/// A plain polynomial is a right-hand side; `num / den` is an integrand.
fn parse_target(item: &Item, names: &[String]) -> Result<Target, ProblemError> {
    if let Ok(p) = parse_poly(item.text, names) {
        if !p.is_ordinary() {
            return Err(item.err("negative exponents are not allowed here"));
        }
        return Ok(Target::Rhs(p));
    }
    let (num, den) = parse_fraction(item.text, names).map_err(|e| item.poly_err(e))?;
    if den.is_zero() {
        return Err(item.err("zero denominator"));
    }
    Ok(Target::Integrand(num, den))
}

fn build(items: Vec<(&str, Item)>) -> Result<ProblemFile, ProblemError> {
    let eof = ProblemError { line: 0, col: 0, msg: String::new() };
    let vars_item = only(&items, "vars")?.ok_or(ProblemError { msg: "missing [vars] section".into(), ..eof.clone() })?;
    let vars: Vec<String> = vars_item.text.split_whitespace().map(str::to_string).collect();
    for (i, v) in vars.iter().enumerate() {
        let ok =
            v.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(vars_item.err(format!("invalid variable name `{v}`")));
        }
        if vars[..i].contains(v) {
            return Err(vars_item.err(format!("variable `{v}` listed twice")));
        }
    }
    let n = vars.len();

    let mut derivs: Vec<Option<(Poly, Poly)>> = vec![None; n];
    for (_, item) in items.iter().filter(|(s, _)| *s == "deriv") {
        let (lhs, rhs) = item.text.split_once('=').ok_or_else(|| item.err("expected `name = expr`"))?;
        let name = lhs.trim();
        let i = vars.iter().position(|v| v == name).ok_or_else(|| item.err(format!("unknown variable `{name}`")))?;
        if derivs[i].is_some() {
            return Err(item.err(format!("derivative of `{name}` given twice")));
        }
        let off = lhs.len() + 1 + (rhs.len() - rhs.trim_start().len());
        let sub = Item { line: item.line, col: item.col + off, text: rhs.trim() };
        let (num, den) = parse_fraction(sub.text, &vars).map_err(|e| sub.poly_err(e))?;
        if den.is_zero() {
            return Err(sub.err("zero denominator"));
        }
        derivs[i] = Some((num, den));
    }
    let derivs: Vec<(Poly, Poly)> = derivs
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or(ProblemError { msg: format!("missing [deriv] for `{}`", vars[i]), ..eof.clone() }))
        .collect::<Result<_, _>>()?;

    let order = match only(&items, "order")? {
        None => OrderSpec::Lex,
        Some(item) if item.text == "lex" => OrderSpec::Lex,
        Some(item) => {
            let body = item.text.strip_prefix("matrix").ok_or_else(|| item.err("expected `lex` or `matrix ...`"))?;
            let rows: Vec<Vec<Q>> = body
                .split(';')
                .map(|r| r.split_whitespace().map(|t| parse_q(item, t)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(item.err(format!("order matrix must be {n}x{n}")));
            }
            MonomialOrder::new(rows.clone()).map_err(|e| item.err(e.to_string()))?;
            OrderSpec::Matrix(rows)
        }
    };

    let v = match only(&items, "v")? {
        None => Poly::one(n),
        Some(item) => {
            let p = parse_poly(item.text, &vars).map_err(|e| item.poly_err(e))?;
            if p.is_zero() || !p.is_ordinary() {
                return Err(item.err("v must be a nonzero polynomial"));
            }
            p
        }
    };
    let deriv =
        DerivationSpec::new(vars.clone(), derivs.clone()).map_err(|e| ProblemError { msg: e.to_string(), ..eof.clone() })?;
    build_p(&deriv, &v).map_err(|e| ProblemError { msg: e.to_string(), ..eof.clone() })?;

    let f0 = only(&items, "f0")?.map(|i| parse_target(i, &vars)).transpose()?;
    let fs: Vec<Target> =
        items.iter().filter(|(s, _)| *s == "f").map(|(_, i)| parse_target(i, &vars)).collect::<Result<_, _>>()?;

    let mut weights = Vec::new();
    for (_, item) in items.iter().filter(|(s, _)| *s == "weights") {
        let w: Vec<Q> = item
            .text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_q(item, t))
            .collect::<Result<_, _>>()?;
        if w.len() != n {
            return Err(item.err(format!("weight vector needs {n} entries")));
        }
        weights.push(w);
    }

    let mut budgets = Budgets::default();
    if let Some(item) = only(&items, "budgets")? {
        for tok in item.text.split_whitespace() {
            let (k, val) = tok.split_once('=').ok_or_else(|| item.err(format!("expected key=value, found `{tok}`")))?;
            let val: usize = val.parse().map_err(|_| item.err(format!("bad budget `{val}`")))?;
            match k {
                "max-iter" => budgets.max_iter = val,
                "inner-budget" => budgets.inner_budget = val,
                "steps" => budgets.steps = val,
                _ => return Err(item.err(format!("unknown budget `{k}`"))),
            }
        }
    }

    Ok(ProblemFile { vars, derivs, order, v, f0, fs, weights, budgets })
}
