//! Derivations on Q(t1..tn), the operator L(u) = (v/g)·∂̃u − (∂̃v/g)·u with
//! g = gcd(v, ∂̃v), its symbol p, and the classical heuristic degree bounds.

use num_traits::{One, Zero};

use crate::poly::{div_poly, gcd_poly, linalg, Exps, LaurentPoly, ParamPoly, Poly, PolyError, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiffError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("zero denominator in the derivative of t{0}")]
    ZeroDenominator(usize),
    #[error("expected {expected} derivatives, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("v must be nonzero")]
    ZeroV,
    #[error("denominator v insufficient: v^2·den(∂)·f/gcd(v, ∂̃v) is not a polynomial")]
    DenominatorInsufficient,
    #[error("L produced a negative exponent; the operator is malformed")]
    NegativeExponent,
    #[error("zero denominator")]
    ZeroFraction,
}

/// A derivation given by ∂t_i = num_i / den_i.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationSpec {
    pub names: Vec<String>,
    pub num: Vec<Poly>,
    pub den: Vec<Poly>,
    den_d: Poly,
    tilde: Vec<Poly>,
}

impl DerivationSpec {
    pub fn new(names: Vec<String>, derivs: Vec<(Poly, Poly)>) -> Result<Self, DiffError> {
        let n = names.len();
        if derivs.len() != n {
            return Err(DiffError::Arity { expected: n, got: derivs.len() });
        }
        let mut num = Vec::with_capacity(n);
        let mut den = Vec::with_capacity(n);
        for (i, (a, b)) in derivs.into_iter().enumerate() {
            if b.is_zero() {
                return Err(DiffError::ZeroDenominator(i + 1));
            }
            let (a, b) = reduce_fraction(&a, &b)?;
            num.push(a);
            den.push(b);
        }
        let (den_d, tilde) = build_tilde(&num, &den)?;
        Ok(Self { names, num, den, den_d, tilde })
    }

    /// Convenience constructor from polynomial derivatives (den = 1).
    pub fn polynomial(names: Vec<String>, derivs: Vec<Poly>) -> Result<Self, DiffError> {
        let n = names.len();
        Self::new(names, derivs.into_iter().map(|d| (d, Poly::one(n))).collect())
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// den(∂), the lcm of the denominators of the ∂t_i.
    pub fn den_d(&self) -> &Poly {
        &self.den_d
    }

    /// ∂̃t_i = den(∂)·∂t_i.
    pub fn tilde(&self) -> &[Poly] {
        &self.tilde
    }

    /// ∂̃f for a polynomial f.
    pub fn apply_tilde(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.n());
        for (i, dt) in self.tilde.iter().enumerate() {
            let d = f.partial(i);
            if !d.is_zero() {
                out = &out + &(&d * dt);
            }
        }
        out
    }
}

/// Cancels the gcd of a fraction; the denominator keeps its sign.
pub fn reduce_fraction(num: &Poly, den: &Poly) -> Result<(Poly, Poly), DiffError> {
    if den.is_zero() {
        return Err(DiffError::ZeroFraction);
    }
    if num.is_zero() {
        return Ok((Poly::zero(num.n()), Poly::one(num.n())));
    }
    let g = gcd_poly(num, den)?;
    Ok((div_poly(num, &g).expect("gcd divides"), div_poly(den, &g).expect("gcd divides")))
}

/// den(∂) as an lcm fold over the denominators, and ∂̃t_i = den(∂)·num_i/den_i.
/// The fold keeps the first denominator's sign and scaling, so a single
/// denominator such as t1(1 − t1²) is used exactly as written.
pub fn build_tilde(num: &[Poly], den: &[Poly]) -> Result<(Poly, Vec<Poly>), DiffError> {
    let n = num.first().map_or(0, |p| p.n());
    let mut l = Poly::one(n);
    for d in den {
        let g = gcd_poly(&l, d)?;
        l = &l * &div_poly(d, &g).expect("gcd divides");
    }
    let tilde = num.iter().zip(den).map(|(a, b)| a * &div_poly(&l, b).expect("lcm is a multiple")).collect();
    Ok((l, tilde))
}

/// The operator L attached to a derivation and a chosen denominator v.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub deriv: DerivationSpec,
    pub v: Poly,
    /// v / gcd(v, ∂̃v)
    pub v_g: Poly,
    /// ∂̃v / gcd(v, ∂̃v)
    pub dv_g: Poly,
    /// p(x, t) with L(t^α) = p(α, t)·t^α.
    pub p: LaurentPoly,
}

pub fn build_p(deriv: &DerivationSpec, v: &Poly) -> Result<OperatorSpec, DiffError> {
    if v.is_zero() {
        return Err(DiffError::ZeroV);
    }
    if !v.is_ordinary() {
        return Err(PolyError::NotOrdinary.into());
    }
    let n = deriv.n();
    let dv = deriv.apply_tilde(v);
    let g = gcd_poly(v, &dv)?;
    let v_g = div_poly(v, &g).expect("gcd divides v");
    let dv_g = div_poly(&dv, &g).expect("gcd divides ∂̃v");
    let mut p = dv_g.lift().neg();
    for (i, dt) in deriv.tilde().iter().enumerate() {
        let mut e = vec![0; n];
        e[i] = -1;
        let term = (&v_g * dt).mul_monomial(&e);
        p = &p + &term.lift().scale(&ParamPoly::var(i));
    }
    Ok(OperatorSpec { deriv: deriv.clone(), v: v.clone(), v_g, dv_g, p })
}

impl OperatorSpec {
    pub fn n(&self) -> usize {
        self.deriv.n()
    }

    /// L(f) = Σ c·p(α, t)·t^α over the terms c·t^α of f.
    pub fn apply(&self, f: &Poly) -> Result<Poly, DiffError> {
        if !f.is_ordinary() {
            return Err(PolyError::NotOrdinary.into());
        }
        let mut out = Poly::zero(self.n());
        for (e, c) in f.terms() {
            let img = self.p.substitute_x(e).mul_monomial(e).scale(c);
            out = &out + &img;
        }
        if !out.is_ordinary() {
            return Err(DiffError::NegativeExponent);
        }
        Ok(out)
    }

    /// L(f) evaluated directly as (v/g)·∂̃f − (∂̃v/g)·f.
    pub fn apply_direct(&self, f: &Poly) -> Poly {
        &(&self.v_g * &self.deriv.apply_tilde(f)) - &(&self.dv_g * f)
    }

    /// The right hand side v²·den(∂)·f / gcd(v, ∂̃v) for an integrand f = num/den.
    pub fn integrand_to_rhs(&self, f_num: &Poly, f_den: &Poly) -> Result<Poly, DiffError> {
        if f_den.is_zero() {
            return Err(DiffError::ZeroFraction);
        }
        let top = &(&(&self.v * &self.v_g) * self.deriv.den_d()) * f_num;
        div_poly(&top, f_den).ok_or(DiffError::DenominatorInsufficient)
    }
}

pub fn apply_l(op: &OperatorSpec, f: &Poly) -> Result<Poly, DiffError> {
    op.apply(f)
}

/// ∂(num/den) as a reduced fraction.
pub fn apply_derivation_rational(deriv: &DerivationSpec, num: &Poly, den: &Poly) -> Result<(Poly, Poly), DiffError> {
    if den.is_zero() {
        return Err(DiffError::ZeroFraction);
    }
    let top = &(&deriv.apply_tilde(num) * den) - &(num * &deriv.apply_tilde(den));
    let bottom = &(den * den) * deriv.den_d();
    reduce_fraction(&top, &bottom)
}

/// Equality of two fractions by cross multiplication.
pub fn fractions_equal(a: &(Poly, Poly), b: &(Poly, Poly)) -> bool {
    &a.0 * &b.1 == &b.0 * &a.1
}

/// The classical heuristic bounds on u for comparison purposes.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicBounds {
    /// Per-variable bound built from elementary monomials.
    pub elementary: Vec<i64>,
    /// Total-degree bound from the derivation denominator.
    pub total_den: i64,
    /// Total-degree bound used by pmint.
    pub pmint: i64,
    /// Per-variable bound used by parrisch.
    pub parrisch: Vec<i64>,
}

impl HeuristicBounds {
    /// Indices of the four bounds that u violates, in the order above.
    pub fn violated_by(&self, u: &Poly) -> [bool; 4] {
        let n = self.elementary.len();
        let per = |b: &[i64]| (0..n).any(|i| u.degree_in(i).unwrap_or(i64::MIN) > b[i]);
        let tot = u.total_degree().unwrap_or(i64::MIN);
        [per(&self.elementary), tot > self.total_den, tot > self.pmint, per(&self.parrisch)]
    }
}

fn deg(p: &Poly) -> i64 {
    p.total_degree().unwrap_or(i64::MIN / 4)
}

fn deg_in(p: &Poly, i: usize) -> i64 {
    p.degree_in(i).unwrap_or(i64::MIN / 4)
}

pub fn heuristic_bounds(f_num: &Poly, f_den: &Poly, v: &Poly, deriv: &DerivationSpec) -> Result<HeuristicBounds, DiffError> {
    let (f_num, f_den) = reduce_fraction(f_num, f_den)?;
    let n = deriv.n();
    let elementary = (0..n)
        .map(|i| {
            // deg_{t_i} of the rational function ∂t_i: numerator minus denominator degree.
            let d = deg_in(&deriv.num[i], i) - deg_in(&deriv.den[i], i);
            1 + deg_in(&f_num, i).max(deg_in(&f_den, i)) - d.min(1)
        })
        .collect();
    let max_tilde = deriv.tilde().iter().map(deg).max().unwrap_or(0);
    let total_den = 1 + deg(&f_num) + 0.max(deg(deriv.den_d()) - max_tilde);
    let g = gcd_poly(&f_den, &deriv.apply_tilde(&f_den))?;
    let pmint = 1 + (deg(v) - deg(&g)) + deg(&f_num).max(deg(&f_den));
    let gd = gcd_poly(deriv.den_d(), &f_den)?;
    let dq = div_poly(deriv.den_d(), &gd).expect("gcd divides");
    let parrisch = (0..n).map(|i| 1 + deg_in(v, i).max(deg_in(&dq, i) + deg_in(&f_num, i))).collect();
    Ok(HeuristicBounds { elementary, total_den, pmint, parrisch })
}

/// Basis of {w : p is w-homogeneous}.
pub fn homogeneous_weights(p: &LaurentPoly) -> Vec<Vec<Q>> {
    let n = p.n();
    let supp: Vec<Exps> = p.support();
    let Some(base) = supp.first() else {
        return identity(n);
    };
    let rows: Vec<Vec<Q>> =
        supp[1..].iter().map(|a| a.iter().zip(base).map(|(x, y)| Q::from_integer((x - y).into())).collect()).collect();
    if rows.is_empty() {
        return identity(n);
    }
    linalg::nullspace(&rows, n)
}

fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

/// True iff every monomial of p has the same w-degree.
pub fn is_homogeneous(p: &LaurentPoly, w: &[Q]) -> bool {
    let mut d: Option<Q> = None;
    for e in p.support() {
        let x: Q = e.iter().zip(w).map(|(&a, wi)| wi * Q::from_integer(a.into())).sum();
        match &d {
            None => d = Some(x),
            Some(y) if *y != x => return false,
            _ => {}
        }
    }
    true
}

#[cfg(test)]
mod tests;
