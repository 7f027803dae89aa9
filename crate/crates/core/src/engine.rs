//! Normal forms with preimages, the main integration problem, verification of
//! integrals and an ansatz-based oracle.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffop::{apply_derivation_rational, fractions_equal, DerivationSpec, DiffError, OperatorSpec};
use crate::poly::linalg::solve;
use crate::poly::{Exps, Poly, Q};
use crate::rules::{reduce_poly_step, ReductionSystem};

pub const DEFAULT_STEP_BUDGET: usize = 10_000;

/// f = L(preimage) + remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormResult {
    pub remainder: Poly,
    pub preimage: Poly,
    pub steps: usize,
    /// Set when the step budget ran out before the remainder was irreducible.
    pub budget_exhausted: bool,
}

/// Reduces the largest reducible monomial until none is left.
///
/// Reducing t^α only introduces monomials below t^α, so irreducible terms
/// above the current one are final and can be moved to the remainder.
pub fn normal_form(f: &Poly, sys: &ReductionSystem, step_budget: usize) -> NormalFormResult {
    let n = f.n();
    let ord = &sys.order;
    let mut work = f.clone();
    let mut rem = Poly::zero(n);
    let mut u = Poly::zero(n);
    let mut steps = 0;
    let mut budget_exhausted = false;
    while let Some(alpha) = work.lm(ord) {
        let Some(rule) = sys.rule_for(&alpha) else {
            let c = work.remove(&alpha).expect("leading term present");
            rem.add_term(alpha, c);
            continue;
        };
        if steps == step_budget {
            budget_exhausted = true;
            break;
        }
        let (next, du) = reduce_poly_step(&work, &rule, &alpha).expect("dispatched rule applies");
        steps += 1;
        work = next;
        u = &u + &du;
    }
    NormalFormResult { remainder: &rem + &work, preimage: u, steps, budget_exhausted }
}

/// Solution of L(u) = f0 + Σ cᵢfᵢ.
#[derive(Debug, Clone, PartialEq)]
pub struct MainProblemSolution {
    pub solvable: bool,
    /// A particular choice of the constants cᵢ.
    pub constants: Vec<Q>,
    /// Basis of the directions in c-space along which the normal forms cancel.
    pub homogeneous: Vec<Vec<Q>>,
    pub u: Poly,
    /// r0 + Σ cᵢrᵢ for the returned c; zero exactly when solvable.
    pub residual: Poly,
    pub budget_exhausted: bool,
}

pub fn solve_main_problem(f0: &Poly, fs: &[Poly], sys: &ReductionSystem) -> MainProblemSolution {
    solve_main_problem_with_budget(f0, fs, sys, DEFAULT_STEP_BUDGET)
}

/// As `solve_main_problem`, with a step budget per normal form.
pub fn solve_main_problem_with_budget(f0: &Poly, fs: &[Poly], sys: &ReductionSystem, step_budget: usize) -> MainProblemSolution {
    let nf0 = normal_form(f0, sys, step_budget);
    let nfs: Vec<NormalFormResult> = fs.iter().map(|f| normal_form(f, sys, step_budget)).collect();
    let budget_exhausted = nf0.budget_exhausted || nfs.iter().any(|r| r.budget_exhausted);
    let m = fs.len();

    let (a, b) = linear_system(&nf0.remainder.neg(), &nfs.iter().map(|r| r.remainder.clone()).collect::<Vec<_>>());

    let (solvable, constants, homogeneous) = match solve(&a, &b, m) {
        Some((c, null)) => (true, c, null),
        None => (false, vec![Q::zero(); m], Vec::new()),
    };
    let mut u = nf0.preimage.clone();
    let mut residual = nf0.remainder.clone();
    for (c, r) in constants.iter().zip(&nfs) {
        u = &u + &r.preimage.scale_q(c);
        residual = &residual + &r.remainder.scale_q(c);
    }
    MainProblemSolution {
        solvable: solvable && residual.is_zero() && !budget_exhausted,
        constants,
        homogeneous,
        u,
        residual,
        budget_exhausted,
    }
}

/// Coefficient equations Σ xⱼ·colsⱼ = rhs, one row per monomial.
fn linear_system(rhs: &Poly, cols: &[Poly]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let k = cols.len();
    let mut table: BTreeMap<Exps, (Vec<Q>, Q)> = BTreeMap::new();
    for (e, c) in rhs.terms() {
        table.entry(e.clone()).or_insert_with(|| (vec![Q::zero(); k], Q::zero())).1 = c.clone();
    }
    for (j, col) in cols.iter().enumerate() {
        for (e, c) in col.terms() {
            table.entry(e.clone()).or_insert_with(|| (vec![Q::zero(); k], Q::zero())).0[j] = c.clone();
        }
    }
    table.into_values().unzip()
}

/// Whether ∂(u/v) = f_num/f_den.
pub fn verify_integral(deriv: &DerivationSpec, u: &Poly, v: &Poly, f_num: &Poly, f_den: &Poly) -> Result<bool, DiffError> {
    if f_den.is_zero() {
        return Err(DiffError::ZeroFraction);
    }
    let d = apply_derivation_rational(deriv, u, v)?;
    Ok(fractions_equal(&d, &(f_num.clone(), f_den.clone())))
}

/// Solves L(u) = f with u supported on `candidates` by plain linear algebra.
pub fn oracle_solve(op: &OperatorSpec, f: &Poly, candidates: &[Exps]) -> Option<Poly> {
    let n = op.n();
    let images: Vec<Poly> = candidates
        .iter()
        .map(|e| op.apply(&Poly::monomial(e.clone(), Q::from_integer(1.into()))).expect("ordinary monomial"))
        .collect();
    let k = candidates.len();
    let (a, b) = linear_system(f, &images);
    let (sol, _) = solve(&a, &b, k)?;
    Some(Poly::from_terms(n, candidates.iter().cloned().zip(sol).filter(|(_, c)| !c.is_zero())))
}

/// All exponent vectors in N^n of total degree at most d.
pub fn monomials_up_to(n: usize, d: i64) -> Vec<Exps> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Exps| {
                let used: i64 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut e2 = e.clone();
                    e2.push(k);
                    e2
                })
            })
            .collect();
    }
    out
}
