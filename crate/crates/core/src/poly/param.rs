//! Polynomials in the exponent variables x1..xn over Q.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the constant
//! monomial is the empty vector and no arity needs to be carried around.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_q, qi, Q};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Vec<u32>, Q>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

/// Graded-lex comparison of trimmed exponent vectors.
pub(crate) fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(qi(n))
    }

    /// The variable x_{i+1} (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(exps), c);
        }
        p
    }

    /// a·x_i + b, a common building block for conditions.
    pub fn linear(i: usize, a: i64, b: i64) -> Self {
        &Self::var(i).scale(&qi(a)) + &Self::from_int(b)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Q)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Vec::new()).cloned();
        }
        None
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    /// Terms in graded-lex descending order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    /// Leading term under graded lex.
    pub fn lead(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Sorted indices of variables that occur.
    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.get(i).copied().unwrap_or(0) > 0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter(|e| !e.is_empty()).map(|e| e.len() - 1).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.get(i).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at an integer point; missing coordinates count as zero.
    pub fn eval(&self, alpha: &[i64]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let a = BigInt::from(alpha.get(i).copied().unwrap_or(0));
                    m *= num_traits::pow(a, k as usize);
                }
            }
            s += c * Q::from_integer(m);
        }
        s
    }

    /// Evaluation at a rational point.
    pub fn eval_q(&self, alpha: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let a = alpha.get(i).cloned().unwrap_or_else(Q::zero);
                    m *= num_traits::pow(a, k as usize);
                }
            }
            s += m;
        }
        s
    }

    /// Substitutes x_i := value, leaving the other variables.
    pub fn subst_value(&self, i: usize, value: &Q) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            let mut e2 = e.clone();
            if i < e2.len() {
                e2[i] = 0;
            }
            out.add_term(trim(e2), c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Substitutes x_i := q for a polynomial q.
    pub fn subst_poly(&self, i: usize, q: &ParamPoly) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<ParamPoly> = vec![Self::one()];
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0) as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * q;
                powers.push(next);
            }
            let mut e2 = e.clone();
            if i < e2.len() {
                e2[i] = 0;
            }
            let rest = Self::monomial(e2, c.clone());
            out = &out + &(&rest * &powers[k]);
        }
        out
    }

    /// p(x + c).
    pub fn translate(&self, c: &[i64]) -> Self {
        if c.iter().all(|&v| v == 0) {
            return self.clone();
        }
        let mut out = self.clone();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 && out.uses_var(i) {
                let lin = &Self::var(i) + &Self::from_int(ci);
                out = out.subst_poly(i, &lin);
            }
        }
        out
    }

    /// p(x − β).
    pub fn shift(&self, beta: &[i64]) -> Self {
        let neg: Vec<i64> = beta.iter().map(|b| -b).collect();
        self.translate(&neg)
    }

    /// If the polynomial has total degree ≤ 1, returns its coefficients
    /// (indexed by variable) and constant term.
    pub fn as_linear(&self) -> Option<(BTreeMap<usize, Q>, Q)> {
        let mut lin = BTreeMap::new();
        let mut c0 = Q::zero();
        for (e, c) in &self.terms {
            let d: u32 = e.iter().sum();
            match d {
                0 => c0 = c.clone(),
                1 => {
                    lin.insert(e.len() - 1, c.clone());
                }
                _ => return None,
            }
        }
        Some((lin, c0))
    }

    /// Dense coefficients in the single variable it uses, if at most one.
    pub fn as_univariate(&self) -> Option<(Option<usize>, Vec<Q>)> {
        let vs = self.vars();
        if vs.len() > 1 {
            return None;
        }
        let v = vs.first().copied();
        let deg = v.map_or(0, |i| self.degree_in(i)) as usize;
        let mut dense = vec![Q::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = v.map_or(0, |i| e.get(i).copied().unwrap_or(0)) as usize;
            dense[k] = c.clone();
        }
        Some((v, dense))
    }

    /// Splits into (content, primitive part) where the primitive part has
    /// integer coefficients with gcd 1 and a positive grlex-leading coefficient.
    pub fn primitive(&self) -> (Q, ParamPoly) {
        if self.is_zero() {
            return (Q::zero(), Self::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if self.lead().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Primitive part, the canonical representative up to rational scaling.
    pub fn normalized(&self) -> ParamPoly {
        self.primitive().1
    }

    /// Terms with x_i-degree k, with x_i removed.
    pub fn coeff_in(&self, i: usize, k: u32) -> ParamPoly {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e.get(i).copied().unwrap_or(0) == k {
                let mut e2 = e.clone();
                if i < e2.len() {
                    e2[i] = 0;
                }
                out.add_term(trim(e2), c.clone());
            }
        }
        out
    }

    /// Infix text with variables named x1..xn.
    pub fn to_text(&self) -> String {
        self.to_text_with(&|i| format!("x{}", i + 1))
    }

    pub fn to_text_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{}", name(i), k) })
                .collect();
            if mono.is_empty() {
                s.push_str(&fmt_q(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&fmt_q(&a));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self.to_text())
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(add_exps(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: ParamPoly) -> ParamPoly {
        &self + &o
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: ParamPoly) -> ParamPoly {
        &self - &o
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: ParamPoly) -> ParamPoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> ParamPoly {
        ParamPoly::var(i)
    }

    #[test]
    fn translate_and_shift_are_inverse() {
        let p = &(&x(0) * &x(1)) + &x(2).pow(2);
        let back = p.translate(&[1, -2, 3]).translate(&[-1, 2, -3]);
        assert_eq!(back, p);
        assert_eq!(ParamPoly::linear(1, 1, -2).shift(&[0, 1]), ParamPoly::linear(1, 1, -3));
    }

    #[test]
    fn primitive_has_positive_lead() {
        let p = ParamPoly::linear(0, -2, 4);
        let (c, pp) = p.primitive();
        assert_eq!(c, qi(-2));
        assert_eq!(pp, ParamPoly::linear(0, 1, -2));
    }

    #[test]
    fn text_form() {
        let p = &(&x(0).pow(2).scale(&qi(3)) - &x(1)) + &ParamPoly::constant(super::super::qr(1, 2));
        assert_eq!(p.to_text(), "3*x1^2 - x2 + 1/2");
    }

    #[test]
    fn eval_at_point() {
        let p = &x(1) - &ParamPoly::from_int(3);
        assert_eq!(p.eval(&[0, 3]), Q::zero());
        assert_eq!(p.eval(&[7]), qi(-3));
    }
}
