use rustc_hash::FxHashMap;

use super::mpoly::MPoly;

/// Largest order evaluated by cofactor expansion in [`det_fraction_free`].
pub const COFACTOR_MAX_ORDER: usize = 5;

/// Exact determinant of a square polynomial matrix.
///
/// Orders up to [`COFACTOR_MAX_ORDER`] use cofactor expansion, larger ones Bareiss
/// fraction-free elimination. The empty matrix has determinant 1.
pub fn det_fraction_free(m: &[Vec<MPoly>]) -> MPoly {
    if m.len() <= COFACTOR_MAX_ORDER {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

fn assert_square(m: &[Vec<MPoly>]) {
    assert!(
        m.iter().all(|row| row.len() == m.len()),
        "determinant of a non-square matrix"
    );
}

/// Laplace expansion along successive rows, memoizing minors by their column set.
pub fn det_cofactor(m: &[Vec<MPoly>]) -> MPoly {
    assert_square(m);
    let n = m.len();
    assert!(n < 32, "cofactor expansion limited to order < 32");
    let mut memo: FxHashMap<u32, MPoly> = FxHashMap::default();
    minor(m, 0, (1u32 << n) - 1, &mut memo)
}

// Determinant of rows `row..n` restricted to the columns in `cols`.
fn minor(m: &[Vec<MPoly>], row: usize, cols: u32, memo: &mut FxHashMap<u32, MPoly>) -> MPoly {
    if row == m.len() {
        return MPoly::one();
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = MPoly::zero();
    let mut sign_positive = true;
    for col in 0..m.len() {
        if cols & (1 << col) == 0 {
            continue;
        }
        let entry = &m[row][col];
        if !entry.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << col), memo);
            if !sub.is_zero() {
                let t = entry * &sub;
                if sign_positive {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Bareiss fraction-free elimination; every intermediate division is exact.
pub fn det_bareiss(m: &[Vec<MPoly>]) -> MPoly {
    assert_square(m);
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut a: Vec<Vec<MPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn c(v: i64) -> MPoly {
        MPoly::constant(v)
    }

    fn identity(n: usize) -> Vec<Vec<MPoly>> {
        (0..n)
            .map(|i| (0..n).map(|j| c((i == j) as i64)).collect())
            .collect()
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(det_fraction_free(&[]), MPoly::one());
        let p = MPoly::var(Var::x()) - c(4);
        assert_eq!(det_fraction_free(&[vec![p.clone()]]), p);
        for n in 1..=8 {
            assert_eq!(det_fraction_free(&identity(n)), MPoly::one(), "order {n}");
        }
    }

    #[test]
    fn bareiss_needs_pivoting() {
        // zero leading entry forces a row swap
        let m = vec![
            vec![c(0), c(1), c(2)],
            vec![c(3), c(4), c(5)],
            vec![c(6), c(7), c(9)],
        ];
        assert_eq!(det_bareiss(&m), det_cofactor(&m));
        assert_eq!(det_bareiss(&m), c(-3));
    }

    #[test]
    fn singular_polynomial_matrix() {
        let x = MPoly::var(Var::x());
        let m = vec![vec![x.clone(), x.pow(2)], vec![c(1), x.clone()]];
        assert!(det_bareiss(&m).is_zero());
        assert!(det_cofactor(&m).is_zero());
    }
}
