//! Small dense exact linear algebra over Q and fraction-free elimination over
//! Q[x1..xn].

use num_traits::{One, Zero};

use super::gcd::div_exact;
use super::{ParamPoly, Q};

/// Reduces `m` to reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn determinant(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
            }
        }
    }
    det
}

/// Solution set of A·y = b: a particular solution and a nullspace basis,
/// or None if inconsistent. `a` has `ncols` columns (also when empty).
pub fn solve(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut part = vec![Q::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        part[c] = m[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect();
    Some((part, basis))
}

pub fn nullspace(a: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let b = vec![Q::zero(); a.len()];
    solve(a, &b, ncols).map(|s| s.1).unwrap_or_default()
}

/// Fraction-free Gauss–Jordan elimination on [A | b] over Q[x].
/// Returns (det A, numerators y) with A·(y / det) = b; None if det A = 0.
pub fn fraction_free_solve(a: &[Vec<ParamPoly>], b: &[ParamPoly]) -> Option<(ParamPoly, Vec<ParamPoly>)> {
    let n = a.len();
    let mut m: Vec<Vec<ParamPoly>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let mut prev = ParamPoly::one();
    let mut sign = false;
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = ParamPoly::zero();
        }
        prev = m[k][k].clone();
    }
    // After full elimination every diagonal entry equals det (up to the swap sign).
    let det = if sign { -&prev } else { prev.clone() };
    let nums = (0..n)
        .map(|i| {
            let y = &m[i][n];
            // m[i][i] = prev, so y / prev = solution; rescale to det.

            div_exact(&(y * &det), &m[i][i]).expect("diagonal divides")
        })
        .collect();
    Some((det, nums))
}

/// Fraction-free determinant over Q[x].
pub fn bareiss_det(a: &[Vec<ParamPoly>]) -> ParamPoly {
    let n = a.len();
    let zero = vec![ParamPoly::zero(); n];
    match fraction_free_solve(a, &zero) {
        Some((d, _)) => d,
        None => ParamPoly::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;

    #[test]
    fn solve_with_free_variable() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        let (p, basis) = solve(&a, &[qi(3), qi(6)], 2).unwrap();
        assert_eq!(p, vec![qi(3), qi(0)]);
        assert_eq!(basis, vec![vec![qi(-1), qi(1)]]);
        assert!(solve(&a, &[qi(3), qi(7)], 2).is_none());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let x = ParamPoly::var(0);
        let one = ParamPoly::one();
        let a = vec![vec![&x + &one, one.clone()], vec![-&x, one.clone()]];
        assert_eq!(bareiss_det(&a), ParamPoly::linear(0, 2, 1));
        let (det, nums) =
            fraction_free_solve(&a, &[&x + &ParamPoly::constant(crate::poly::qr(1, 2)), ParamPoly::zero()]).unwrap();
        assert_eq!(div_exact(&nums[0], &det).unwrap(), ParamPoly::constant(crate::poly::qr(1, 2)));
        assert_eq!(div_exact(&nums[1], &det).unwrap(), x.scale(&crate::poly::qr(1, 2)));
    }

    #[test]
    fn det_with_swap() {
        let a = vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]];
        assert_eq!(determinant(&a), qi(-1));
        let p: Vec<Vec<ParamPoly>> = a.iter().map(|r| r.iter().map(|q| ParamPoly::constant(q.clone())).collect()).collect();
        assert_eq!(bareiss_det(&p), ParamPoly::from_int(-1));
    }
}
