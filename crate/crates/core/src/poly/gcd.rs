//! Multivariate gcd over Q by content/primitive-part recursion with a
//! subresultant remainder sequence in the main variable.

use num_traits::One;

use super::{ParamPoly, Poly, PolyError, Q};

/// Exact quotient a / b, or None if b does not divide a.
pub fn div_exact(a: &ParamPoly, b: &ParamPoly) -> Option<ParamPoly> {
    if b.is_zero() {
        return None;
    }
    if let Some(c) = b.constant_value() {
        return Some(a.scale(&c.recip()));
    }
    let (be, bc) = b.lead().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut rem = a.clone();
    let mut quo = ParamPoly::zero();
    while let Some((re, rc)) = rem.lead().map(|(e, c)| (e.clone(), c.clone())) {
        if be.len() > re.len() || be.iter().zip(&re).any(|(x, y)| x > y) {
            return None;
        }
        let e: Vec<u32> = (0..re.len()).map(|i| re[i] - be.get(i).copied().unwrap_or(0)).collect();
        let t = ParamPoly::monomial(e, rc / &bc);
        rem = &rem - &(&t * b);
        quo = &quo + &t;
    }
    Some(quo)
}

fn monomial_gcd(m: &[u32], p: &ParamPoly) -> ParamPoly {
    let mut e = m.to_vec();
    for (pe, _) in p.terms() {
        for (i, v) in e.iter_mut().enumerate() {
            *v = (*v).min(pe.get(i).copied().unwrap_or(0));
        }
    }
    ParamPoly::monomial(e, Q::one())
}

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive graded-lex leading coefficient. gcd(0, 0) = 0.
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    if a.num_terms() == 1 {
        return monomial_gcd(a.terms().next().unwrap().0, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b.terms().next().unwrap().0, a);
    }
    if div_exact(a, b).is_some() {
        return b.normalized();
    }
    if div_exact(b, a).is_some() {
        return a.normalized();
    }
    let v = a.max_var().max(b.max_var()).unwrap();
    if !a.uses_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = div_exact(a, &ca).expect("content divides");
    let pb = div_exact(b, &cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = prs_gcd(&pa, &pb, v);
    (&c * &g).normalized()
}

pub fn lcm(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() || b.is_zero() {
        return ParamPoly::zero();
    }
    let g = gcd(a, b);
    &div_exact(a, &g).expect("gcd divides") * b
}

/// gcd of two ordinary polynomials with rational coefficients.
pub fn gcd_poly(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    Ok(Poly::from_param(a.n(), &gcd(&a.to_param()?, &b.to_param()?)))
}

/// Exact quotient of ordinary polynomials, or None if b does not divide a.
pub fn div_poly(a: &Poly, b: &Poly) -> Option<Poly> {
    let q = div_exact(&a.to_param().ok()?, &b.to_param().ok()?)?;
    Some(Poly::from_param(a.n(), &q))
}

fn to_dense(p: &ParamPoly, v: usize) -> Vec<ParamPoly> {
    let d = p.degree_in(v);
    (0..=d).map(|k| p.coeff_in(v, k)).collect()
}

fn from_dense(c: &[ParamPoly], v: usize) -> ParamPoly {
    let mut out = ParamPoly::zero();
    for (k, ck) in c.iter().enumerate() {
        if !ck.is_zero() {
            let mut e = vec![0u32; v + 1];
            e[v] = k as u32;
            out = &out + &(ck * &ParamPoly::monomial(e, Q::one()));
        }
    }
    out
}

fn trim(c: &mut Vec<ParamPoly>) {
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

/// gcd of the coefficients of p viewed in the variable v.
fn content_in(p: &ParamPoly, v: usize) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in to_dense(p, v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn prem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() as i64 - b.len() as i64 + 1;
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bi);
        }
        r.pop();
        trim(&mut r);
        e -= 1;
        if r.iter().all(|x| x.is_zero()) {
            return vec![ParamPoly::zero()];
        }
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    r
}

fn prs_gcd(a: &ParamPoly, b: &ParamPoly, v: usize) -> ParamPoly {
    let mut a = to_dense(a, v);
    let mut b = to_dense(b, v);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = ParamPoly::one();
    let mut h = ParamPoly::one();
    loop {
        let d = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        if r.len() == 1 {
            return ParamPoly::one();
        }
        let denom = &g * &h.pow(d);
        let r: Vec<ParamPoly> = r.iter().map(|x| div_exact(x, &denom).expect("subresultant division")).collect();
        a = b;
        b = r;
        g = a.last().unwrap().clone();
        h = if d == 0 { h } else { div_exact(&g.pow(d), &h.pow(d - 1)).expect("subresultant h update") };
    }
    let bp = from_dense(&b, v);
    let c = content_in(&bp, v);
    div_exact(&bp, &c).expect("content divides").normalized()
}
