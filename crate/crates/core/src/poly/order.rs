//! Matrix-defined monomial orders on Z^n and extended rationals for degrees.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::linalg::determinant;
use super::{fmt_q, PolyError, Q};

/// Weight vector for weighted degrees; entries may be zero or negative.
pub type WeightVector = Vec<Q>;

/// Rationals extended by ±∞, ordered NegInf < Fin(_) < PosInf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(Q),
    PosInf,
}

impl Ext {
    pub fn fin(&self) -> Option<&Q> {
        match self {
            Ext::Fin(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("+inf"),
            Ext::Fin(q) => f.write_str(&fmt_q(q)),
        }
    }
}

/// t^α < t^β iff the first nonzero entry of M·(β−α) is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    matrix: Vec<Vec<Q>>,
    // Each row scaled by a positive integer so comparisons run on machine ints.
    int_rows: Vec<Vec<i64>>,
    noetherian: bool,
}

impl MonomialOrder {
    pub fn new(matrix: Vec<Vec<Q>>) -> Result<Self, PolyError> {
        let n = matrix.len();
        for r in &matrix {
            if r.len() != n {
                return Err(PolyError::Dimension { expected: n, got: r.len() });
            }
        }
        if determinant(&matrix).is_zero() {
            return Err(PolyError::SingularOrder);
        }
        let int_rows = matrix
            .iter()
            .map(|r| {
                let l = r.iter().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
                r.iter().map(|q| (q * Q::from_integer(l.clone())).to_integer().to_i64().expect("order entry too large")).collect()
            })
            .collect();
        let noetherian = (0..n).all(|j| matrix.iter().map(|r| &r[j]).find(|q| !q.is_zero()).is_some_and(|q| q.is_positive()));
        Ok(Self { matrix, int_rows, noetherian })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&a| Q::from_integer(a.into())).collect()).collect())
            .expect("invalid order matrix")
    }

    /// Lexicographic t1 > t2 > … > tn.
    pub fn lex(n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_int_rows(&refs)
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    pub fn is_noetherian(&self) -> bool {
        self.noetherian
    }

    /// Compares monomials t^a and t^b.
    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        for row in &self.int_rows {
            let mut s: i128 = 0;
            for ((r, x), y) in row.iter().zip(a).zip(b) {
                s += *r as i128 * (*x as i128 - *y as i128);
            }
            match s.cmp(&0) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Compares with the zero-monomial sentinel (None) below everything.
    pub fn cmp_opt(&self, a: Option<&[i64]>, b: Option<&[i64]>) -> Ordering {
        match (a, b) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(x), Some(y)) => self.cmp(x, y),
        }
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.matrix.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "MonomialOrder[{}]", rows.join("; "))
    }
}
