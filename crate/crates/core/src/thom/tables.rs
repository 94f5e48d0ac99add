use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    D,
    E,
}

/// A lower-triangular-ish integer table addressed by `(i, j)` as in `d_{ij}` / `e_{ij}`.
///
/// The `d` table starts at `(1, 1)`, the `e` table at `(2, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub kind: TableKind,
    rows: Vec<Vec<BigInt>>,
}

impl CoeffTable {
    pub fn first_row(&self) -> usize {
        match self.kind {
            TableKind::D => 1,
            TableKind::E => 2,
        }
    }

    pub fn first_col(&self) -> usize {
        match self.kind {
            TableKind::D => 1,
            TableKind::E => 0,
        }
    }

    pub fn last_row(&self) -> usize {
        self.first_row() + self.rows.len() - 1
    }

    /// Entry `(i, j)`; zero outside the computed range.
    pub fn get(&self, i: usize, j: usize) -> BigInt {
        if i < self.first_row() || j < self.first_col() {
            return BigInt::zero();
        }
        self.rows
            .get(i - self.first_row())
            .and_then(|row| row.get(j - self.first_col()))
            .cloned()
            .unwrap_or_default()
    }

    /// Row `i` with its nonzero entries only.
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i - self.first_row()]
    }

    pub fn width(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Rows padded with zeros to one column past the widest row.
    pub fn padded_rows(&self) -> Vec<Vec<BigInt>> {
        let w = self.width() + 1;
        self.rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(w, BigInt::zero());
                r
            })
            .collect()
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.padded_rows();
        let cell = rows
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>cell$}")).collect();
            writeln!(f, "{} ...", cells.join(" "))?;
        }
        Ok(())
    }
}

// Coefficients of 1/((1-z)(1-2z)...(1-kz)) up to z^n.
fn geometric_product(k: u32, n: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); n + 1];
    s[0] = BigInt::from(1);
    for a in 1..=k {
        for i in 1..=n {
            let t = &s[i - 1] * a;
            s[i] += t;
        }
    }
    s
}

// Fills rows beyond the first column with `t_{i+1,j} = t_{i,j-1} + t_{ij}`.
fn fill(first_col: Vec<BigInt>, widths: impl Fn(usize) -> usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(first_col.len());
    for (k, c) in first_col.into_iter().enumerate() {
        let mut row = vec![c];
        for j in 1..widths(k) {
            let prev = &rows[k - 1];
            let v = prev.get(j - 1).cloned().unwrap_or_default()
                + prev.get(j).cloned().unwrap_or_default();
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// Rows `1..=rows` of `d`: `d_{i1}` from `1/((1-z)(1-2z))`, nonzero for `j ≤ ⌊(i+1)/2⌋`.
pub fn d_table(rows: usize) -> CoeffTable {
    let series = geometric_product(2, rows.saturating_sub(1));
    let first = series.into_iter().take(rows).collect();
    CoeffTable {
        kind: TableKind::D,
        rows: fill(first, |k| (k + 2) / 2),
    }
}

/// Rows `2..=rows` of `e`: `e_{i0}` from `(5-6z)/((1-z)(1-2z)(1-3z))`, nonzero for
/// `j ≤ ⌊(i-2)/2⌋`.
pub fn e_table(rows: usize) -> CoeffTable {
    let n = rows.saturating_sub(1);
    let g = geometric_product(3, n);
    let first = (0..n)
        .map(|k| {
            let prev = if k == 0 {
                BigInt::zero()
            } else {
                &g[k - 1] * 6
            };
            &g[k] * 5 - prev
        })
        .collect();
    CoeffTable {
        kind: TableKind::E,
        rows: fill(first, |k| k / 2 + 1),
    }
}
