//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: each row is scaled to integers and reduced
//! with Bareiss' two-step update, so every intermediate entry is a minor of
//! the input and stays an integer. Pivots are taken as the first nonzero
//! entry in column order, which makes the elimination trace a pure function
//! of the input.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, fmt_q, Rational};

pub type QVector = Vec<Rational>;

/// Dense rectangular matrix of rationals, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Usage("matrix rows have unequal lengths".into()));
        }
        Ok(QMatrix { rows, cols })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows: vec![vec![Rational::zero(); cols]; rows],
            cols,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.rows[row][col] = value;
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.cols)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        QMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::Usage(format!(
                "matrix has {} columns but vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok(self.rows.iter().map(|r| dot(r, v)).collect())
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().take(i.min(self.cols)).all(Zero::is_zero))
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let cells: Vec<String> = r.iter().map(fmt_q).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Outcome of [`solve`], classified by exact rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(QVector),
    NoSolution,
    Underdetermined { rank: usize },
}

impl Solution {
    pub fn unique(self) -> Option<QVector> {
        match self {
            Solution::Unique(v) => Some(v),
            _ => None,
        }
    }
}

/// Integer row-echelon form of a (possibly augmented) system.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pivots: Vec<usize>,
}

/// Scales a rational row to a primitive-denominator integer row.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(row);
    row.iter().map(|v| (v.numer() * &l) / v.denom()).collect()
}

/// Bareiss elimination restricted to the first `coef_cols` columns; any
/// further columns (right-hand sides) are carried along.
fn bareiss(mut rows: Vec<Vec<BigInt>>, coef_cols: usize) -> Echelon {
    let nrows = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..coef_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in c + 1..width {
                let num = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = quo;
            }
            row[c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

/// Exact rank over the rationals.
pub fn rank(a: &QMatrix) -> usize {
    let rows = a.rows.iter().map(|r| integer_row(r)).collect();
    bareiss(rows, a.cols).pivots.len()
}

/// Solves `a · c = b` exactly.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Result<Solution> {
    if a.nrows() != b.len() {
        return Err(Error::Usage(format!(
            "system has {} rows but right-hand side has {} entries",
            a.nrows(),
            b.len()
        )));
    }
    let n = a.cols;
    let rows = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut aug = r.clone();
            aug.push(rhs.clone());
            integer_row(&aug)
        })
        .collect();
    let ech = bareiss(rows, n);
    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return Ok(Solution::NoSolution);
    }
    if rank < n {
        return Ok(Solution::Underdetermined { rank });
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..rank).rev() {
        let row = &ech.rows[i];
        let c = ech.pivots[i];
        let mut acc = Rational::from_integer(row[n].clone());
        for j in c + 1..n {
            acc -= Rational::from_integer(row[j].clone()) * &x[j];
        }
        x[c] = acc / Rational::from_integer(row[c].clone());
    }
    debug_assert_eq!(a.mul_vec(&x).expect("dimensions checked"), b);
    Ok(Solution::Unique(x))
}
