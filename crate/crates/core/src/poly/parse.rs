//! Text form of polynomials.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | name ('^' '-'? integer)? | '(' expr ')' ('^' integer)?
//! ```
//! A leading '-' on a term is accepted as negation. Names are the field
//! generators plus, where allowed, the exponent variables x1..xn.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{fmt_q, LaurentPoly, ParamPoly, Poly, PolyError, Q};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Q),
    Name(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = text[s..i].parse().unwrap();
            if i + 1 < b.len() && b[i] == b'/' && b[i + 1].is_ascii_digit() {
                let s2 = i + 1;
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = text[s2..i].parse().unwrap();
                if den == BigInt::from(0) {
                    return Err(PolyError::Syntax { pos: s2, msg: "zero denominator".into() });
                }
                out.push((s, Tok::Num(Q::new(num, den))));
            } else {
                out.push((s, Tok::Num(Q::from_integer(num))));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Name(text[s..i].to_string())));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(PolyError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    tnames: &'a [String],
    nx: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.tnames.len()
    }

    fn expr(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, PolyError> {
        if self.eat('-') {
            return Ok(self.term()?.neg());
        }
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                let v: i64 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| PolyError::Syntax { pos: self.offset(), msg: "exponent too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly, PolyError> {
        let n = self.n();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(n, ParamPoly::constant(q)))
            }
            Some(Tok::Name(name)) => {
                let at = self.offset();
                self.pos += 1;
                let exp = if self.eat('^') { self.integer()? } else { 1 };
                if let Some(i) = self.tnames.iter().position(|t| *t == name) {
                    let mut e = vec![0; n];
                    e[i] = exp;
                    return Ok(LaurentPoly::monomial(e, ParamPoly::one()));
                }
                if let Some(k) = x_index(&name) {
                    if k >= 1 && k <= self.nx {
                        if exp < 0 {
                            return Err(PolyError::Syntax { pos: at, msg: "negative power of an x-variable".into() });
                        }
                        return Ok(LaurentPoly::constant(n, ParamPoly::var(k - 1).pow(exp as u32)));
                    }
                }
                Err(PolyError::UnknownVariable(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                if self.eat('^') {
                    let k = self.integer()?;
                    return inner.pow(k);
                }
                Ok(inner)
            }
            _ => self.err("expected a number, a name or `(`"),
        }
    }
}

fn x_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|c| c.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

fn run<T>(text: &str, tnames: &[String], nx: usize, f: impl FnOnce(&mut Parser) -> Result<T, PolyError>) -> Result<T, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), tnames, nx };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let v = f(&mut p)?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Parses a Laurent polynomial in `tnames` with coefficients in x1..x_nx.
pub fn parse_laurent(text: &str, tnames: &[String], nx: usize) -> Result<LaurentPoly, PolyError> {
    run(text, tnames, nx, |p| p.expr())
}

/// Parses a polynomial with rational coefficients (no x-variables).
pub fn parse_poly(text: &str, tnames: &[String]) -> Result<Poly, PolyError> {
    parse_laurent(text, tnames, 0)?.to_poly().ok_or(PolyError::HasParameters)
}

/// Parses a polynomial in x1..xn.
pub fn parse_param(text: &str, nx: usize) -> Result<ParamPoly, PolyError> {
    let l = parse_laurent(text, &[], nx)?;
    Ok(l.coeff(&[]).cloned().unwrap_or_else(ParamPoly::zero))
}

/// Parses `expr` or `expr / expr` (top-level division separates a fraction).
pub fn parse_fraction(text: &str, tnames: &[String]) -> Result<(Poly, Poly), PolyError> {
    run(text, tnames, 0, |p| {
        let num = p.expr()?;
        let den = if p.eat('/') { p.expr()? } else { LaurentPoly::one(tnames.len()) };
        let num = num.to_poly().ok_or(PolyError::HasParameters)?;
        let den = den.to_poly().ok_or(PolyError::HasParameters)?;
        Ok((num, den))
    })
}

/// Canonical printer for polynomials over named generators.
#[derive(Clone, Debug)]
pub struct Printer {
    pub names: Vec<String>,
}

impl Printer {
    pub fn new(names: &[String]) -> Self {
        Self { names: names.to_vec() }
    }

    /// Default names t1..tn.
    pub fn default_for(n: usize) -> Self {
        Self { names: (1..=n).map(|i| format!("t{i}")).collect() }
    }

    fn mono(&self, e: &[i64]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], k) })
            .collect();
        parts.join("*")
    }

    pub fn laurent(&self, p: &LaurentPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in p.canonical_terms().into_iter().enumerate() {
            let mono = self.mono(e);
            let (neg, body) = if let Some(q) = c.constant_value() {
                let a = q.abs();
                let body = if mono.is_empty() {
                    fmt_q(&a)
                } else if a.is_one() {
                    mono
                } else {
                    format!("{}*{}", fmt_q(&a), mono)
                };
                (q.is_negative(), body)
            } else if c.num_terms() == 1 {
                let (_, q) = c.terms().next().unwrap();
                let neg = q.is_negative();
                let cc = if neg { -c } else { c.clone() };
                let ct = cc.to_text();
                (neg, if mono.is_empty() { ct } else { format!("{ct}*{mono}") })
            } else {
                let ct = format!("({})", c.to_text());
                (false, if mono.is_empty() { ct } else { format!("{ct}*{mono}") })
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    pub fn poly(&self, p: &Poly) -> String {
        self.laurent(&p.lift())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_basic() {
        let t = names(&["t1", "t2"]);
        let p = parse_poly("t2^2+1", &t).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[0, 2]), Some(&qi(1)));
        assert!(parse_poly("0", &t).unwrap().is_zero());
        assert_eq!(parse_poly("t3", &t), Err(PolyError::UnknownVariable("t3".into())));
    }

    #[test]
    fn parse_tan_p_and_print() {
        let t = names(&["t1", "t2"]);
        let p = parse_laurent("(x2-2)*t2 + x2*t2^-1 + x1*t1^-1", &t, 2).unwrap();
        let s = Printer::new(&t).laurent(&p);
        assert_eq!(s, "(x2 - 2)*t2 + x2*t2^-1 + x1*t1^-1");
        assert_eq!(parse_laurent(&s, &t, 2).unwrap(), p);
    }

    #[test]
    fn binomial_square() {
        let t = names(&["t2", "t3"]);
        let p = parse_poly("(t3 - 1/2*t2)^2", &t).unwrap();
        assert_eq!(p, parse_poly("t3^2 - t2*t3 + 1/4*t2^2", &t).unwrap());
    }

    #[test]
    fn fractions_and_errors() {
        let t = names(&["t1", "t2", "t3"]);
        let (n, d) = parse_fraction("(t3^2+1)/t1", &t).unwrap();
        assert_eq!(d, parse_poly("t1", &t).unwrap());
        assert_eq!(n.num_terms(), 2);
        assert!(matches!(parse_poly("t1 +", &t), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("(t1+t2)^-1", &t), Err(PolyError::NegativePower)));
    }
}
