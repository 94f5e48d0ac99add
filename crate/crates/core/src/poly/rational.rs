use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational number; always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearError {
    #[error("linear system has no solution")]
    InconsistentSystem,
    #[error("dimension mismatch: matrix has {rows} rows but right-hand side has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        RatMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rhs = vec![Rational::zero(); self.rows];
        reduce(self, &rhs).pivots.len()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution; free variables are set to zero.
    pub solution: Vec<Rational>,
    pub kernel_dim: usize,
}

struct Reduced {
    // reduced rows (coefficients, rhs), pivot rows first
    rows: Vec<(Vec<Rational>, Rational)>,
    pivots: Vec<usize>,
}

// Gauss-Jordan elimination on the augmented system. The pivot in each column is the
// remaining row whose entry has the largest-magnitude numerator.
fn reduce(a: &RatMatrix, rhs: &[Rational]) -> Reduced {
    let mut rows: Vec<(Vec<Rational>, Rational)> = (0..a.rows)
        .map(|r| (a.row(r).to_vec(), rhs[r].clone()))
        .filter(|(row, b)| !(b.is_zero() && row.iter().all(Zero::is_zero)))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..a.cols {
        let best = (next..rows.len())
            .filter(|&r| !rows[r].0[col].is_zero())
            .max_by(|&r, &s| {
                rows[r].0[col]
                    .numer()
                    .abs()
                    .cmp(&rows[s].0[col].numer().abs())
                    .then(s.cmp(&r))
            });
        let Some(p) = best else { continue };
        rows.swap(next, p);
        let inv = rows[next].0[col].recip();
        {
            let (row, b) = &mut rows[next];
            for v in row.iter_mut().skip(col) {
                *v *= &inv;
            }
            *b *= &inv;
        }
        let (pivot_row, pivot_rhs) = rows[next].clone();
        for (r, (row, b)) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            *b -= &factor * &pivot_rhs;
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    Reduced { rows, pivots }
}

/// Solves `a · v = rhs` exactly, reporting the null-space dimension.
pub fn solve_rational_system(
    a: &RatMatrix,
    rhs: &[Rational],
) -> Result<LinearSolution, LinearError> {
    if rhs.len() != a.rows {
        return Err(LinearError::DimensionMismatch {
            rows: a.rows,
            rhs: rhs.len(),
        });
    }
    let red = reduce(a, rhs);
    let rank = red.pivots.len();
    if red.rows[rank..].iter().any(|(_, b)| !b.is_zero()) {
        return Err(LinearError::InconsistentSystem);
    }
    let mut solution = vec![Rational::zero(); a.cols];
    for (k, &col) in red.pivots.iter().enumerate() {
        solution[col] = red.rows[k].1.clone();
    }
    Ok(LinearSolution {
        solution,
        kernel_dim: a.cols - rank,
    })
}

/// Converts an integral rational, or returns `None`.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}
