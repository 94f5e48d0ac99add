use num_bigint::BigInt;

use crate::alphabet::{b_alphabet, d_alphabet, x2, Alphabet, Letter, VirtualAlphabet};
use crate::expansion::default_template;
use crate::poly::{MPoly, Var};
use crate::schur::{lambda_function, resultant, Partition, SchurEvaluator};

use super::closed::{f_i_r, h_r};
use super::restriction::{restriction_equations, Status, VerificationEntry, VerificationReport};
use super::tables::e_table;
use super::{SingularityId, ThomError};

fn entry(label: impl Into<String>, lhs: &MPoly, rhs: &MPoly) -> VerificationEntry {
    let residual = lhs - rhs;
    VerificationEntry {
        equation_label: label.into(),
        status: if residual.is_zero() {
            Status::Pass
        } else {
            Status::Fail
        },
        residual: residual.to_string(),
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Compares `F^(i)_1` with `Σ_{j=1}^{i} (i-1)!/(i-j)! Λ_j F^(j)_1`, both sides evaluated
/// at `A_i - B_i` and multiplied pointwise.
pub fn porteous_recursion_check(i: u32) -> VerificationReport {
    let v = default_template(i);
    let mut ev = SchurEvaluator::structural(&v);
    let lhs = f_i_r(i, 1).evaluate_with(&mut ev);
    let mut rhs = MPoly::zero();
    for j in 1..=i {
        let c = factorial(i - 1) / factorial(i - j);
        let term = &lambda_function(i64::from(j), &v) * &f_i_r(j, 1).evaluate_with(&mut ev);
        rhs += &term.scale(&c);
    }
    VerificationReport {
        target: format!("F{i}_1 recursion"),
        entries: vec![entry(
            format!("F{i}_1 = sum_j (i-1)!/(i-j)! L_j F(j)_1 at {v}"),
            &lhs,
            &rhs,
        )],
    }
}

/// `n` letters equal to zero: specializing `B_n` to `0` while keeping its cardinality.
pub fn zero_letters(n: usize) -> Alphabet {
    Alphabet::from_letters(std::iter::repeat_n(Letter::constant(0), n))
}

/// `V_r(X2; B) = Σ e_{r-k,j} S_k(-D - B) S_{j, r-k-j-2}(X2)`.
pub fn v_r(r: u32, b: &Alphabet) -> MPoly {
    assert!(r >= 2, "V_r needs r >= 2");
    let e = e_table(r as usize);
    let mut neg = SchurEvaluator::new(&VirtualAlphabet::negative(d_alphabet().sum(b)));
    let mut xs = SchurEvaluator::new(&VirtualAlphabet::positive(x2()));
    let mut acc = MPoly::zero();
    for k in 0..=r - 2 {
        for j in (0..).take_while(|j| k + 2 * j <= r - 2) {
            let c = e.get((r - k) as usize, j as usize);
            let two_row = Partition::from_increasing(&[j, r - k - j - 2]).expect("j ≤ r-k-j-2");
            let t = &neg.complete(i64::from(k)) * &xs.schur(&two_row);
            acc += &t.scale(&c);
        }
    }
    acc
}

/// `U_r(X2; B) = -F^(3)_r(X2 - D - B) / R(X2, D + B)`.
pub fn u_r(r: u32, b: &Alphabet) -> Result<MPoly, ThomError> {
    let v = VirtualAlphabet::new(x2(), d_alphabet().sum(b));
    let f = f_i_r(3, r).evaluate_with(&mut SchurEvaluator::structural(&v));
    let r_poly = resultant(&v.plus, &v.minus);
    (-f).div_exact(&r_poly).ok_or_else(|| {
        ThomError::DivisionFailed(format!("F3_{r}({v}) by R({}, {})", v.plus, v.minus))
    })
}

/// `3^{r-2} (3 S_{r-2}(X2) - 2 S_{1, r-3}(X2))`, with `S_{1,r-3}` read as a determinant.
pub fn uv_closed_form(r: u32) -> MPoly {
    let mut xs = SchurEvaluator::new(&VirtualAlphabet::positive(x2()));
    let r = i64::from(r);
    let a = xs.complete(r - 2).scale(&BigInt::from(3));
    let b = xs.schur_seq(&[1, r - 3]).scale(&BigInt::from(2));
    (&a - &b).scale(&BigInt::from(3).pow((r - 2) as u32))
}

#[derive(Debug, Clone)]
pub struct AppendixUv {
    pub r: u32,
    pub u_at_0: MPoly,
    pub v_at_0: MPoly,
    pub report: VerificationReport,
}

/// Computes `U_r(X2; 0)` and `V_r(X2; 0)` and checks the identities relating `U`, `V`,
/// `H_r` and `F^(3)_r`.
pub fn appendix_uv(r: u32) -> Result<AppendixUv, ThomError> {
    if r < 2 {
        return Err(ThomError::UnsupportedSingularity(format!(
            "U/V with r = {r}"
        )));
    }
    let n = (r - 2) as usize;
    let bs = b_alphabet(n);
    let u0 = u_r(r, &zero_letters(n))?;
    let v0 = v_r(r, &zero_letters(n));
    let mut entries = vec![
        entry(format!("U_{r}(X2;0) = V_{r}(X2;0)"), &u0, &v0),
        entry(
            format!(
                "V_{r}(X2;0) = 3^{}(3S_{}(X2) - 2S_{{1,{}}}(X2))",
                r - 2,
                r - 2,
                r as i64 - 3
            ),
            &v0,
            &uv_closed_form(r),
        ),
    ];

    let neg_b = VirtualAlphabet::negative(b_alphabet(n));
    let mut sb = SchurEvaluator::new(&neg_b);
    let mut v_sum = MPoly::zero();
    let mut u_sum = MPoly::zero();
    for i in 0..=r - 2 {
        let s = sb.complete(i64::from(i));
        let zeros = zero_letters((r - i - 2) as usize);
        v_sum += &(&v_r(r - i, &zeros) * &s);
        u_sum += &(&u_r(r - i, &zeros)? * &s);
    }
    let v_full = v_r(r, &bs);
    let u_full = u_r(r, &bs)?;
    entries.push(entry(
        format!("V_{r}(X2;B{n}) = sum_i V_(r-i)(X2;0) S_i(-B{n})"),
        &v_full,
        &v_sum,
    ));
    entries.push(entry(
        format!("U_{r}(X2;B{n}) = sum_i U_(r-i)(X2;0) S_i(-B{n})"),
        &u_full,
        &u_sum,
    ));

    let h = h_r(r);
    let point = VirtualAlphabet::new(x2(), d_alphabet().sum(&bs));
    let mut ev = SchurEvaluator::structural(&point);
    let h_val = h.evaluate_with(&mut ev);
    let r_poly = resultant(&point.plus, &point.minus);
    entries.push(entry(
        format!("H_{r}({point}) = V_{r} R"),
        &h_val,
        &(&v_full * &r_poly),
    ));
    let f_val = f_i_r(3, r).evaluate_with(&mut ev);
    entries.push(entry(
        format!("(F3_{r} + H_{r})({point}) = 0"),
        &(&f_val + &h_val),
        &MPoly::zero(),
    ));

    let mut eqs = restriction_equations(SingularityId::a(3, r))?;
    eqs.retain(|e| e.rhs.is_zero() && e.label.starts_with('A'));
    let four = VirtualAlphabet::new(
        Alphabet::var(Var::x()),
        Alphabet::single(Letter::scaled(4, Var::x())).sum(&b_alphabet((r - 1) as usize)),
    );
    let mut points: Vec<VirtualAlphabet> = eqs.into_iter().map(|e| e.substitution).collect();
    points.push(four);
    for p in points {
        let value = h.evaluate_with(&mut SchurEvaluator::structural(&p));
        entries.push(entry(format!("H_{r}({p}) = 0"), &value, &MPoly::zero()));
    }

    Ok(AppendixUv {
        r,
        u_at_0: u0,
        v_at_0: v0,
        report: VerificationReport {
            target: format!("U/V r={r}"),
            entries,
        },
    })
}
