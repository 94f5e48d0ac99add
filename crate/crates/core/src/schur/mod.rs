//! Complete functions and Schur functions of virtual alphabets.
//!
//! For a virtual alphabet `A - B`, the complete function `S_i(A - B)` is the coefficient
//! of `z^i` in `∏_{b}(1 - bz) / ∏_{a}(1 - az)`, and for a sequence `I = (i_1, ..., i_k)`
//! the Schur function is `S_I(A - B) = det[S_{i_p + p - q}(A - B)]`.

mod eval;
mod partition;

pub use eval::{resultant, straighten, SchurEvaluator, Strategy};
pub use partition::{hook_contains, HookSpec, Partition, PartitionError};

use num_bigint::BigInt;
use thiserror::Error;

use crate::alphabet::{Alphabet, VirtualAlphabet};
use crate::poly::MPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("partition {partition} has more than {rows} parts")]
    CardinalityMismatch { partition: Partition, rows: usize },
    #[error("partition {partition} has a part larger than {width}")]
    OutsideHook { partition: Partition, width: u32 },
}

/// `S_i(v)`.
pub fn complete_function(i: i64, v: &VirtualAlphabet) -> MPoly {
    SchurEvaluator::new(v).complete(i)
}

/// `S_I(v)` for an arbitrary integer sequence, written in increasing convention.
pub fn schur(seq: &[i64], v: &VirtualAlphabet) -> MPoly {
    SchurEvaluator::new(v).schur_seq(seq)
}

pub fn schur_partition(p: &Partition, v: &VirtualAlphabet) -> MPoly {
    SchurEvaluator::new(v).schur(p)
}

/// `S_{λ/μ}(v)`.
pub fn skew_schur(outer: &Partition, inner: &Partition, v: &VirtualAlphabet) -> MPoly {
    SchurEvaluator::new(v).skew(outer, inner)
}

/// The partition `(j_1, ..., j_k, i_1 + n, ..., i_m + n)` with `I` padded to `m` parts.
pub fn factorization_partition(
    j: &Partition,
    i: &Partition,
    m: usize,
    n: u32,
) -> Result<Partition, SchurError> {
    if i.len() > m {
        return Err(SchurError::CardinalityMismatch {
            partition: i.clone(),
            rows: m,
        });
    }
    if j.largest() > n {
        return Err(SchurError::OutsideHook {
            partition: j.clone(),
            width: n,
        });
    }
    let mut parts = i.add_to_rows(m, n).parts().to_vec();
    parts.extend_from_slice(j.parts());
    Ok(Partition::from_decreasing(&parts).expect("top rows dominate the tail"))
}

/// `S_I(A) · R(A, B) · S_J(-B)`, the value of `S_{(J, I + n)}(A - B)` for `|A| = m`,
/// `|B| = n`.
pub fn schur_factorized(
    j: &Partition,
    i: &Partition,
    a: &Alphabet,
    b: &Alphabet,
) -> Result<MPoly, SchurError> {
    factorization_partition(j, i, a.len(), b.len() as u32)?;
    let sa = SchurEvaluator::new(&VirtualAlphabet::positive(a.clone())).schur(i);
    let sb = SchurEvaluator::new(&VirtualAlphabet::negative(b.clone())).schur(j);
    Ok(&(&sa * &resultant(a, b)) * &sb)
}

/// `F(A, n; v) = Σ_{I ⊆ (n^m)} S_I(A) · S_{n - i_m, ..., n - i_1, n + |I|}(v)` with `m = |A|`.
pub fn f_function(a: &Alphabet, n: u32, v: &VirtualAlphabet) -> MPoly {
    let mut ea = SchurEvaluator::new(&VirtualAlphabet::positive(a.clone()));
    let mut ev = SchurEvaluator::new(v);
    f_function_with(&mut ea, a.len(), n, &mut ev)
}

/// [`f_function`] over existing evaluators for `A` and `v`.
pub fn f_function_with(
    ea: &mut SchurEvaluator,
    m: usize,
    n: u32,
    ev: &mut SchurEvaluator,
) -> MPoly {
    let mut acc = MPoly::zero();
    for i in Partition::within_rectangle(m, n) {
        let c = ea.schur(&i);
        if c.is_zero() {
            continue;
        }
        let s = ev.schur(&f_index(&i, m, n));
        acc += &(&c * &s);
    }
    acc
}

/// The index `(n - i_m, ..., n - i_1, n + |I|)` paired with `S_I(A)` inside `F`.
pub fn f_index(i: &Partition, m: usize, n: u32) -> Partition {
    let mut parts: Vec<u32> = (0..m).map(|k| n - i.part(k)).collect();
    parts.push(n + i.weight());
    Partition::from_increasing(&parts).expect("complement of a partition in a rectangle")
}

/// `Λ_j(v) = (-1)^j S_j(-v)`.
pub fn lambda_function(j: i64, v: &VirtualAlphabet) -> MPoly {
    let s = complete_function(j, &v.negated());
    if j % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Binomial coefficient helper shared by tests and tables.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, t| acc * (n - t) / (t + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{b_alphabet, d_alphabet, e_alphabet, x2, Letter};
    use crate::poly::Var;

    fn va(s: &str) -> VirtualAlphabet {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn x() -> MPoly {
        MPoly::var(Var::x())
    }

    fn xi(i: u32) -> MPoly {
        MPoly::var(Var::xi(i))
    }

    fn b(i: u32) -> MPoly {
        MPoly::var(Var::b(i))
    }

    #[test]
    fn boxed_versus_integer_alphabets() {
        for i in 0..8 {
            assert_eq!(complete_function(i, &va("[2]")), MPoly::constant(1i64 << i));
            assert_eq!(
                complete_function(i, &va("int:2")),
                MPoly::constant(binomial(i as u64 + 1, 1))
            );
        }
        assert_eq!(complete_function(2, &va("2")), MPoly::constant(3));
        assert_eq!(
            complete_function(2, &va("X2")),
            &(&xi(1).pow(2) + &(&xi(1) * &xi(2))) + &xi(2).pow(2)
        );
        assert_eq!(
            complete_function(2, &va("[x1+x2]")),
            (&xi(1) + &xi(2)).pow(2)
        );
        assert_eq!(complete_function(2, &va("3x")), x().pow(2).scale(&6.into()));
        assert_eq!(
            complete_function(2, &va("[3x]")),
            x().pow(2).scale(&9.into())
        );
        assert!(complete_function(0, &va("X2 - B3")).is_one());
        assert!(complete_function(-1, &va("X2 - B3")).is_zero());
    }

    #[test]
    fn determinant_examples() {
        let a2b4 = va("A2 - B4");
        assert!(schur(&[4, 5, 6, 9], &a2b4).is_zero());
        assert!(schur(&[], &a2b4).is_one());
        let v = VirtualAlphabet::new(x2(), e_alphabet());
        let expect = &(&(&xi(1) * &xi(2)) * &(&xi(1) - &xi(2).scale(&2.into())))
            * &(&xi(2) - &xi(1).scale(&2.into()));
        assert_eq!(schur(&[2, 2], &v), expect);
        assert_eq!(resultant(&x2(), &e_alphabet()), expect);
        for pp in [2, 3] {
            let v = va(&format!("x - [{pp}x] - B2"));
            assert!(schur(&[4, 4], &v).is_zero());
        }
    }

    #[test]
    fn resultant_examples() {
        assert!(resultant(&x2(), &Alphabet::empty()).is_one());
        assert_eq!(
            resultant(&Alphabet::var(Var::x()), &b_alphabet(1)),
            &x() - &b(1)
        );
        let plus = x2().sum(&Alphabet::single("x1+x2".parse::<Letter>().unwrap()));
        let expect = &(&(&xi(1) - &b(1)) * &(&xi(2) - &b(1))) * &(&(&xi(1) + &xi(2)) - &b(1));
        let r = resultant(&plus, &b_alphabet(1));
        assert_eq!(r, expect);
        assert_eq!(
            r,
            schur_partition(
                &Partition::rectangle(3, 1),
                &VirtualAlphabet::new(plus, b_alphabet(1))
            )
        );
    }

    #[test]
    fn factorization_examples() {
        let a = Alphabet::variables('a', 2);
        let bb = b_alphabet(3);
        let v = VirtualAlphabet::new(a.clone(), bb.clone());
        assert_eq!(
            schur_factorized(&Partition::empty(), &Partition::empty(), &a, &bb).unwrap(),
            resultant(&a, &bb)
        );
        assert_eq!(
            resultant(&a, &bb),
            schur_partition(&Partition::rectangle(2, 3), &v)
        );
        // S_{c, r+1+a, r+1+b}(X2 - D - B_{r-2}) with (c, a, b) = (1, 0, 1), r = 3
        let minus = d_alphabet().sum(&b_alphabet(1));
        let fact = schur_factorized(&p("1"), &p("0,1"), &x2(), &minus).unwrap();
        assert_eq!(
            fact,
            schur(&[1, 4, 5], &VirtualAlphabet::new(x2(), minus.clone()))
        );
        assert!(matches!(
            schur_factorized(&p("5"), &p(""), &x2(), &minus),
            Err(SchurError::OutsideHook { .. })
        ));
        assert!(matches!(
            schur_factorized(&p(""), &p("1,1,1"), &x2(), &minus),
            Err(SchurError::CardinalityMismatch { .. })
        ));
    }

    #[test]
    fn lfr_proof_step() {
        // S_{n-i_m, ..., n-i_1, n+|I|}(x - B) = S_{(n^m)/I}(-B) R(x, B) x^{|I|}
        let (m, n) = (2usize, 2u32);
        let i = p("1,1");
        let bb = b_alphabet(n as usize);
        let lhs = schur_partition(
            &f_index(&i, m, n),
            &VirtualAlphabet::new(Alphabet::var(Var::x()), bb.clone()),
        );
        let skew = skew_schur(
            &Partition::rectangle(m, n),
            &i,
            &VirtualAlphabet::negative(bb.clone()),
        );
        let rhs = &(&skew * &resultant(&Alphabet::var(Var::x()), &bb)) * &x().pow(i.weight());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_function_examples() {
        let v = va("x - B2");
        assert_eq!(
            f_function(&Alphabet::empty(), 2, &v),
            complete_function(2, &v)
        );
        let two = Alphabet::boxed(2);
        assert_eq!(
            f_function(&two, 2, &v),
            resultant(&va("x + [2x]").plus, &b_alphabet(2))
        );
        let a = Alphabet::boxed_range(2, 3);
        let expect = &(&(&x() - &b(1)) * &(&x().scale(&2.into()) - &b(1)))
            * &(&x().scale(&3.into()) - &b(1));
        assert_eq!(f_function(&a, 1, &va("x - B1")), expect);
    }

    #[test]
    fn lambda_examples() {
        assert!(lambda_function(0, &va("X2")).is_one());
        assert_eq!(lambda_function(2, &va("X2")), &xi(1) * &xi(2));
        assert_eq!(lambda_function(1, &va("[2] + [3]")), MPoly::constant(5));
        assert!(lambda_function(3, &va("X2")).is_zero());
    }

    #[test]
    fn skew_reduces_to_straight() {
        let v = va("X2 - B2");
        let outer = p("1,2,3");
        assert_eq!(
            skew_schur(&outer, &Partition::empty(), &v),
            schur_partition(&outer, &v)
        );
        assert!(skew_schur(&p("1,1"), &p("2"), &v).is_zero());
    }
}
