//! S-expression form of conditions, e.g. `(and (= (- x2 2) 0) (!= x1 0))`.

use num_traits::{One, Signed};

use super::{Condition, Rel};
use crate::poly::{fmt_q, ParamPoly, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SexprError {
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("bad operator `{0}`")]
    BadOperator(String),
    #[error("bad arity for `{0}`")]
    Arity(String),
    #[error("variable index out of range: `{0}`")]
    Variable(String),
}

fn term_sexpr(e: &[u32], c: &Q) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("(^ x{} {})", i + 1, k) })
        .collect();
    match (factors.len(), c.is_one()) {
        (0, _) => fmt_q(c),
        (1, true) => factors[0].clone(),
        (_, true) => format!("(* {})", factors.join(" ")),
        _ => format!("(* {} {})", fmt_q(c), factors.join(" ")),
    }
}

pub fn poly_to_sexpr(p: &ParamPoly) -> String {
    let terms = p.sorted_terms();
    match terms.len() {
        0 => "0".into(),
        1 => term_sexpr(terms[0].0, terms[0].1),
        _ => {
            let first = term_sexpr(terms[0].0, terms[0].1);
            if terms[1..].iter().all(|(_, c)| c.is_negative()) {
                let rest: Vec<String> = terms[1..].iter().map(|(e, c)| term_sexpr(e, &c.abs())).collect();
                format!("(- {} {})", first, rest.join(" "))
            } else {
                let rest: Vec<String> = terms[1..].iter().map(|(e, c)| term_sexpr(e, c)).collect();
                format!("(+ {} {})", first, rest.join(" "))
            }
        }
    }
}

pub(super) fn cond_to_sexpr(c: &Condition) -> String {
    match c {
        Condition::True => "true".into(),
        Condition::False => "false".into(),
        Condition::Atom(p, r) => format!("({} {} 0)", r.symbol(), poly_to_sexpr(p)),
        Condition::And(v) => format!("(and {})", v.iter().map(cond_to_sexpr).collect::<Vec<_>>().join(" ")),
        Condition::Or(v) => format!("(or {})", v.iter().map(cond_to_sexpr).collect::<Vec<_>>().join(" ")),
        Condition::Not(x) => format!("(not {})", cond_to_sexpr(x)),
    }
}

#[derive(Debug, Clone)]
enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn read(text: &str) -> Result<Sx, SexprError> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let toks: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let sx = read_at(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(SexprError::Unexpected(toks[pos].into()));
    }
    Ok(sx)
}

fn read_at(toks: &[&str], pos: &mut usize) -> Result<Sx, SexprError> {
    let t = *toks.get(*pos).ok_or(SexprError::Unbalanced)?;
    *pos += 1;
    match t {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    None => return Err(SexprError::Unbalanced),
                    Some(&")") => {
                        *pos += 1;
                        return Ok(Sx::List(items));
                    }
                    Some(_) => items.push(read_at(toks, pos)?),
                }
            }
        }
        ")" => Err(SexprError::Unbalanced),
        a => Ok(Sx::Atom(a.into())),
    }
}

fn poly_of(sx: &Sx, nx: usize) -> Result<ParamPoly, SexprError> {
    match sx {
        Sx::Atom(a) => {
            if let Some(rest) = a.strip_prefix('x') {
                let k: usize = rest.parse().map_err(|_| SexprError::Unexpected(a.clone()))?;
                if k == 0 || k > nx {
                    return Err(SexprError::Variable(a.clone()));
                }
                return Ok(ParamPoly::var(k - 1));
            }
            a.parse::<Q>().map(ParamPoly::constant).map_err(|_| SexprError::Unexpected(a.clone()))
        }
        Sx::List(items) => {
            let Some(Sx::Atom(op)) = items.first() else {
                return Err(SexprError::BadOperator(format!("{:?}", items.first())));
            };
            let args = items[1..].iter().map(|x| poly_of(x, nx)).collect::<Result<Vec<_>, _>>()?;
            match op.as_str() {
                "+" => Ok(args.iter().fold(ParamPoly::zero(), |a, b| &a + b)),
                "*" => Ok(args.iter().fold(ParamPoly::one(), |a, b| &a * b)),
                "-" => match args.split_first() {
                    None => Err(SexprError::Arity(op.clone())),
                    Some((a, [])) => Ok(-a),
                    Some((a, rest)) => Ok(rest.iter().fold(a.clone(), |acc, b| &acc - b)),
                },
                "^" => {
                    let [base, e] = args.as_slice() else { return Err(SexprError::Arity(op.clone())) };
                    let k = e
                        .constant_value()
                        .filter(|q| q.is_integer() && !q.is_negative())
                        .and_then(|q| u32::try_from(q.to_integer()).ok())
                        .ok_or_else(|| SexprError::Arity(op.clone()))?;
                    Ok(base.pow(k))
                }
                _ => Err(SexprError::BadOperator(op.clone())),
            }
        }
    }
}

fn cond_of(sx: &Sx, nx: usize) -> Result<Condition, SexprError> {
    match sx {
        Sx::Atom(a) if a == "true" => Ok(Condition::True),
        Sx::Atom(a) if a == "false" => Ok(Condition::False),
        Sx::Atom(a) => Err(SexprError::Unexpected(a.clone())),
        Sx::List(items) => {
            let Some(Sx::Atom(op)) = items.first() else {
                return Err(SexprError::BadOperator("()".into()));
            };
            let rest = &items[1..];
            match op.as_str() {
                "and" => Ok(Condition::and(rest.iter().map(|x| cond_of(x, nx)).collect::<Result<_, _>>()?)),
                "or" => Ok(Condition::or(rest.iter().map(|x| cond_of(x, nx)).collect::<Result<_, _>>()?)),
                "not" => match rest {
                    [x] => Ok(Condition::not(cond_of(x, nx)?)),
                    _ => Err(SexprError::Arity(op.clone())),
                },
                s => {
                    let rel = Rel::from_symbol(s).ok_or_else(|| SexprError::BadOperator(s.into()))?;
                    let [l, r] = rest else { return Err(SexprError::Arity(op.clone())) };
                    Ok(Condition::atom(&poly_of(l, nx)? - &poly_of(r, nx)?, rel))
                }
            }
        }
    }
}

/// Parses a condition over x1..x_nx.
pub fn parse_sexpr(text: &str, nx: usize) -> Result<Condition, SexprError> {
    cond_of(&read(text)?, nx)
}

/// Parses a polynomial in x1..x_nx written as an s-expression.
pub fn parse_poly_sexpr(text: &str, nx: usize) -> Result<ParamPoly, SexprError> {
    poly_of(&read(text)?, nx)
}
