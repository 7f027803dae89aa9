//! Sparse Laurent polynomials in t1..tn, generic over the coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::order::{Ext, MonomialOrder};
use super::{Exps, ParamPoly, PolyError, Q};

/// The operations the Laurent layer needs from its coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_add(&self, o: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    fn from_q(q: Q) -> Self;
}

impl Coeff for Q {
    fn c_zero() -> Self {
        Q::zero()
    }
    fn c_one() -> Self {
        Q::one()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_neg(&self) -> Self {
        -self.clone()
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_q(q: Q) -> Self {
        q
    }
}

impl Coeff for ParamPoly {
    fn c_zero() -> Self {
        ParamPoly::zero()
    }
    fn c_one() -> Self {
        ParamPoly::one()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self + o
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_q(q: Q) -> Self {
        ParamPoly::constant(q)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    n: usize,
    terms: BTreeMap<Exps, C>,
}

/// Laurent polynomial with coefficients in Q[x1..xn].
pub type LaurentPoly = Laurent<ParamPoly>;
/// Polynomial (or Laurent polynomial) with rational coefficients.
pub type Poly = Laurent<Q>;

/// Graded-lex comparison on Z^n, used only for canonical printing.
pub(crate) fn grlex_z(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl<C: Coeff> Laurent<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], C::c_one())
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(exps: Exps, c: C) -> Self {
        let n = exps.len();
        let mut p = Self::zero(n);
        if !c.c_is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The generator t_{i+1}.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, C::c_one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, C)>>(n: usize, it: I) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: C) {
        debug_assert_eq!(e.len(), self.n);
        if c.c_is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.c_add(&c);
                if v.c_is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exps> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &[i64]) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn remove(&mut self, e: &[i64]) -> Option<C> {
        self.terms.remove(e)
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.c_neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.c_is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.c_mul(c));
        }
        out
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        self.scale(&C::from_q(q.clone()))
    }

    /// Multiplication by the Laurent monomial t^γ.
    pub fn mul_monomial(&self, gamma: &[i64]) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(gamma).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Integer power; negative exponents only for monomials.
    pub fn pow(&self, k: i64) -> Result<Self, PolyError> {
        if k < 0 {
            if self.terms.len() != 1 {
                return Err(PolyError::NegativePower);
            }
            let (e, c) = self.terms.iter().next().unwrap();
            if *c != C::c_one() {
                return Err(PolyError::NegativePower);
            }
            let e2: Exps = e.iter().map(|&a| a * k).collect();
            return Ok(Self::monomial(e2, C::c_one()));
        }
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Leading term under the given order; None for the zero polynomial.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Exps, &C)> {
        let mut it = self.terms.iter();
        let mut best = it.next()?;
        for t in it {
            if ord.cmp(t.0, best.0) == Ordering::Greater {
                best = t;
            }
        }
        Some(best)
    }

    pub fn lm(&self, ord: &MonomialOrder) -> Option<Exps> {
        self.leading(ord).map(|(e, _)| e.clone())
    }

    pub fn lc(&self, ord: &MonomialOrder) -> Option<C> {
        self.leading(ord).map(|(_, c)| c.clone())
    }

    /// P − lt(P).
    pub fn tail(&self, ord: &MonomialOrder) -> Self {
        let mut out = self.clone();
        if let Some(m) = self.lm(ord) {
            out.terms.remove(&m);
        }
        out
    }

    /// Truncation P_{≤m} (or P_{<m} when `strict`).
    pub fn truncate(&self, ord: &MonomialOrder, m: &[i64], strict: bool) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| match ord.cmp(e, m) {
                    Ordering::Less => true,
                    Ordering::Equal => !strict,
                    Ordering::Greater => false,
                })
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms sorted by the order, largest first.
    pub fn sorted_desc(&self, ord: &MonomialOrder) -> Vec<(&Exps, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    /// Terms in canonical (graded-lex descending) order.
    pub fn canonical_terms(&self) -> Vec<(&Exps, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_z(b.0, a.0));
        v
    }

    pub fn deg_w(&self, w: &[Q]) -> Ext {
        let mut best = Ext::NegInf;
        for e in self.terms.keys() {
            let d: Q = e.iter().zip(w).map(|(&a, wi)| wi * Q::from_integer(a.into())).sum();
            let d = Ext::Fin(d);
            if d > best {
                best = d;
            }
        }
        best
    }

    pub fn degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        let mut out = Laurent::<D>::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Formal partial derivative in t_{i+1}.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c.c_mul(&C::from_q(Q::from_integer(e[i].into()))));
            }
        }
        out
    }
}

impl LaurentPoly {
    /// Evaluates every coefficient at x = α.
    pub fn substitute_x(&self, alpha: &[i64]) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.eval(alpha));
        }
        out
    }

    /// P(x − β, t) / t^β.
    pub fn shift_x(&self, beta: &[i64]) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let e2: Exps = e.iter().zip(beta).map(|(a, b)| a - b).collect();
            out.add_term(e2, c.shift(beta));
        }
        out
    }

    pub fn from_poly(p: &Poly) -> Self {
        p.map_coeffs(|c| ParamPoly::constant(c.clone()))
    }

    /// Drops the parameter layer if every coefficient is constant.
    pub fn to_poly(&self) -> Option<Poly> {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.constant_value()?);
        }
        Some(out)
    }

    pub fn is_param_free(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }
}

impl Poly {
    /// View as a polynomial over Q in variables t1..tn (as ParamPoly).
    pub fn to_param(&self) -> Result<ParamPoly, PolyError> {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().any(|&k| k < 0) {
                return Err(PolyError::NotOrdinary);
            }
            terms.push((e.iter().map(|&k| k as u32).collect(), c.clone()));
        }
        Ok(ParamPoly::from_terms(terms))
    }

    pub fn from_param(n: usize, p: &ParamPoly) -> Self {
        let mut out = Self::zero(n);
        for (e, c) in p.terms() {
            let mut v = vec![0i64; n];
            for (i, &k) in e.iter().enumerate() {
                v[i] = k as i64;
            }
            out.add_term(v, c.clone());
        }
        out
    }

    pub fn lift(&self) -> LaurentPoly {
        LaurentPoly::from_poly(self)
    }

    pub fn eval_q(&self, t: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let b = num_traits::pow(t[i].clone(), k.unsigned_abs() as usize);
                if k >= 0 {
                    m *= b;
                } else {
                    m /= b;
                }
            }
            s += m;
        }
        s
    }
}

impl<'a, C: Coeff> Add<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, o: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, o: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.c_neg());
        }
        out
    }
}

impl<'a, C: Coeff> Mul<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, o: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.c_mul(c2));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent::neg(self)
    }
}

impl<C: Coeff> Add for Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<C: Coeff> Sub for Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<C: Coeff> Mul for Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.canonical_terms()).finish()
    }
}
