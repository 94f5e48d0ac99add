use num_bigint::BigInt;

use crate::alphabet::{e_alphabet, x2, Alphabet, VirtualAlphabet};
use crate::expansion::SchurExpansion;
use crate::poly::MPoly;
use crate::schur::{f_index, resultant, straighten, Partition, SchurEvaluator};

use super::tables::{d_table, e_table};
use super::ThomError;

fn part(seq: &[u32]) -> Partition {
    Partition::from_increasing(seq).expect("weakly increasing index")
}

/// The two-row part `Σ_j d_{rj} S_{r+j, 2r+1-j}` of the `I_{2,2}` polynomial.
pub fn p_r_o(r: u32) -> SchurExpansion {
    let d = d_table(r as usize);
    let mut out = SchurExpansion::new();
    for j in 1..=r.div_ceil(2) {
        out.add_term(
            part(&[r + j, 2 * r + 1 - j]),
            &d.get(r as usize, j as usize),
        );
    }
    out.with_meta(r, "I22o")
}

/// The Thom polynomial of `I_{2,2}`:
/// `Σ_{k<r} Σ_{j≥1, k+2j≤r+1} d_{r-k,j} S_{k, r+j, 2r-k-j+1}`.
pub fn thom_i22(r: u32) -> SchurExpansion {
    let d = d_table(r as usize);
    let mut out = SchurExpansion::new();
    for k in 0..r {
        for j in (1..).take_while(|j| k + 2 * j <= r + 1) {
            out.add_term(
                part(&[k, r + j, 2 * r - k - j + 1]),
                &d.get((r - k) as usize, j as usize),
            );
        }
    }
    out.with_meta(r, "I22")
}

/// `Σ_{J ⊆ (r^{i-1})} S_J([2] + ... + [i]) S_{r - j_{i-1}, ..., r - j_1, r + |J|}`,
/// with `F^(1)_r = S_r`.
pub fn f_i_r(i: u32, r: u32) -> SchurExpansion {
    let name = format!("F{i}");
    if i <= 1 {
        return SchurExpansion::single(part(&[r])).with_meta(r, name);
    }
    let boxes = VirtualAlphabet::positive(Alphabet::boxed_range(2, i64::from(i)));
    let mut ev = SchurEvaluator::new(&boxes);
    let m = (i - 1) as usize;
    let mut out = SchurExpansion::new();
    for j in Partition::within_rectangle(m, r) {
        let c = ev
            .schur(&j)
            .as_constant()
            .expect("Schur functions of integers are integers");
        let index: Vec<i64> = f_index(&j, m, r)
            .increasing()
            .into_iter()
            .map(i64::from)
            .collect();
        if let Some((sign, p)) = straighten(&index) {
            out.add_term(p, &(c * sign));
        }
    }
    out.with_meta(r, name)
}

/// The correction `Σ_{k≤r-2} Σ_{j≥0, k+2j≤r-2} e_{r-k,j} S_{k, r+j+1, 2r-k-j-1}`;
/// empty for `r < 2`.
pub fn h_r(r: u32) -> SchurExpansion {
    let mut out = SchurExpansion::new();
    if r >= 2 {
        let e = e_table(r as usize);
        for k in 0..=r - 2 {
            for j in (0..).take_while(|j| k + 2 * j <= r - 2) {
                out.add_term(
                    part(&[k, r + j + 1, 2 * r - k - j - 1]),
                    &e.get((r - k) as usize, j as usize),
                );
            }
        }
    }
    out.with_meta(r, "H")
}

/// The two-row part `Σ_j e_{rj} S_{r+1+j, 2r-1-j}` of [`h_r`].
pub fn h_r_o(r: u32) -> SchurExpansion {
    let mut out = SchurExpansion::new();
    if r >= 2 {
        let e = e_table(r as usize);
        for j in (0..).take_while(|j| 2 * j <= r - 2) {
            out.add_term(
                part(&[r + 1 + j, 2 * r - 1 - j]),
                &e.get(r as usize, j as usize),
            );
        }
    }
    out.with_meta(r, "Ho")
}

/// Thom polynomials of `A_1`, `A_2`, `A_3` for every `r`, and of `A_4` for `r = 1`.
pub fn thom_a(i: u32, r: u32) -> Result<SchurExpansion, ThomError> {
    let name = format!("A{i}");
    if r == 0 {
        return Err(ThomError::UnsupportedSingularity(format!(
            "{name} with r = 0"
        )));
    }
    let e = match (i, r) {
        (1 | 2, _) => f_i_r(i, r),
        (3, _) => &f_i_r(3, r) + &h_r(r),
        (4, 1) => {
            let f = f_i_r(4, 1);
            let (defect, s22) = a4_defect(&f);
            let c = (-defect)
                .div_exact(&s22)
                .and_then(|q| q.as_constant())
                .ok_or_else(|| ThomError::DivisionFailed("I22 defect of F4".into()))?;
            let mut out = f;
            out.add_term(part(&[2, 2]), &c);
            out
        }
        _ => {
            return Err(ThomError::UnsupportedSingularity(format!(
                "{name} with r = {r}"
            )))
        }
    };
    Ok(e.with_meta(r, name))
}

/// Value of `e` at `X2 - [2x1] - [2x2]` together with `S_22` there.
pub fn a4_defect(e: &SchurExpansion) -> (MPoly, MPoly) {
    let v = VirtualAlphabet::new(x2(), e_alphabet());
    (
        e.evaluate_with(&mut SchurEvaluator::structural(&v)),
        resultant(&x2(), &e_alphabet()),
    )
}

/// `S_{r+1, r+1}`, defined for `r ≥ 2`.
pub fn thom_iii22(r: u32) -> Result<SchurExpansion, ThomError> {
    if r < 2 {
        return Err(ThomError::UnsupportedSingularity(format!(
            "III22 with r = {r}"
        )));
    }
    Ok(SchurExpansion::single(part(&[r + 1, r + 1])).with_meta(r, "III22"))
}

/// `Σ_{j ≤ r} 2^j S_{r-j, r+j}`.
pub fn a2_closed_form(r: u32) -> SchurExpansion {
    SchurExpansion::from_terms((0..=r).map(|j| (part(&[r - j, r + j]), BigInt::from(2).pow(j))))
}
