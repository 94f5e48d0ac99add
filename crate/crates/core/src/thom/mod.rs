//! Thom polynomials of `A_1..A_3`, `A_4` (`r = 1`), `I_{2,2}` and `III_{2,2}` as Schur
//! expansions: closed forms, restriction equations and their solver.

mod checks;
mod closed;
mod restriction;
mod tables;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use checks::{
    appendix_uv, porteous_recursion_check, u_r, uv_closed_form, v_r, zero_letters, AppendixUv,
};
pub use closed::{
    a2_closed_form, a4_defect, f_i_r, h_r, h_r_o, p_r_o, thom_a, thom_i22, thom_iii22,
};
pub use restriction::{
    candidate_partitions, default_filter, restriction_equations, solve, solve_restriction_system,
    verify, CandidateFilter, CandidateMode, RestrictionEquation, RestrictionSystem, Solution,
    Status, VerificationEntry, VerificationReport,
};
pub use tables::{d_table, e_table, CoeffTable, TableKind};

use crate::expansion::SchurExpansion;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThomError {
    #[error("unsupported singularity: {0}")]
    UnsupportedSingularity(String),
    #[error("restriction system is underdetermined (kernel dimension {kernel_dim})")]
    Underdetermined { kernel_dim: usize },
    #[error("restriction system is inconsistent")]
    InconsistentSystem,
    #[error("restriction system has a non-integer solution")]
    NonIntegerSolution,
    #[error("no candidate partitions")]
    NoCandidates,
    #[error("division is not exact: {0}")]
    DivisionFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A(u32),
    I22,
    III22,
}

/// A singularity class together with the parameter `r = k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SingularityId {
    pub family: Family,
    pub r: u32,
}

impl SingularityId {
    pub fn a(i: u32, r: u32) -> Self {
        SingularityId {
            family: Family::A(i),
            r,
        }
    }

    pub fn i22(r: u32) -> Self {
        SingularityId {
            family: Family::I22,
            r,
        }
    }

    pub fn iii22(r: u32) -> Self {
        SingularityId {
            family: Family::III22,
            r,
        }
    }

    pub fn codim(&self) -> u32 {
        match self.family {
            Family::A(i) => self.r * i,
            Family::I22 => 3 * self.r + 1,
            Family::III22 => 2 * self.r + 2,
        }
    }

    /// The closed-form Thom polynomial.
    pub fn thom_polynomial(&self) -> Result<SchurExpansion, ThomError> {
        match self.family {
            Family::A(i) => thom_a(i, self.r),
            Family::I22 if self.r >= 1 => Ok(thom_i22(self.r)),
            Family::I22 => Err(ThomError::UnsupportedSingularity("I22 with r = 0".into())),
            Family::III22 => thom_iii22(self.r),
        }
    }
}

impl fmt::Display for SingularityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A(i) => write!(f, "A{i}"),
            Family::I22 => write!(f, "I22"),
            Family::III22 => write!(f, "III22"),
        }
    }
}

/// Parses a family name (`A3`, `I22`, `III22`); the parameter `r` is set separately.
impl FromStr for Family {
    type Err = ThomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s
            .trim()
            .replace(['_', ',', '{', '}'], "")
            .to_ascii_uppercase();
        match t.as_str() {
            "I22" => Ok(Family::I22),
            "III22" => Ok(Family::III22),
            _ => t
                .strip_prefix('A')
                .and_then(|i| i.parse::<u32>().ok())
                .map(Family::A)
                .ok_or_else(|| ThomError::UnsupportedSingularity(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{x2, VirtualAlphabet};
    use crate::poly::MPoly;

    fn ex(s: &str) -> SchurExpansion {
        s.parse().unwrap()
    }

    #[test]
    fn codimensions() {
        assert_eq!(SingularityId::a(3, 4).codim(), 12);
        assert_eq!(SingularityId::i22(2).codim(), 7);
        assert_eq!(SingularityId::iii22(2).codim(), 6);
        assert_eq!("A3".parse::<Family>().unwrap(), Family::A(3));
        assert_eq!("I_{2,2}".parse::<Family>().unwrap(), Family::I22);
        assert!("Q".parse::<Family>().is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(p_r_o(1), ex("S[2,2]"));
        assert_eq!(p_r_o(3), ex("7S[4,6] + 3S[5,5]"));
        assert_eq!(p_r_o(5), ex("31S[6,10] + 25S[7,9] + 10S[8,8]"));
        assert_eq!(thom_i22(2), ex("S[1,3,3] + 3S[3,4]"));
        assert_eq!(
            thom_i22(4),
            ex("S[3,5,5]+3S[2,5,6]+7S[1,5,7]+3S[1,6,6]+15S[5,8]+10S[6,7]")
        );
        assert_eq!(h_r(1), SchurExpansion::new());
        assert_eq!(h_r(2), ex("5S[3,3]"));
        assert_eq!(h_r(4), ex("5S[2,5,5]+24S[1,5,6]+24S[6,6]+89S[5,7]"));
        assert_eq!(h_r_o(5), ex("300S[6,9]+113S[7,8]"));
        assert_eq!(f_i_r(3, 1), ex("S[1,1,1]+5S[1,2]+6S[3]"));
        assert_eq!(f_i_r(4, 1), ex("S[1,1,1,1]+9S[1,1,2]+26S[1,3]+24S[4]"));
        for r in 1..5 {
            assert_eq!(f_i_r(2, r), a2_closed_form(r));
            assert_eq!(
                thom_a(1, r).unwrap(),
                SchurExpansion::single(format!("{r}").parse().unwrap())
            );
        }
        assert_eq!(
            thom_a(3, 2).unwrap(),
            ex("S[2,2,2]+5S[1,2,3]+6S[1,1,4]+19S[2,4]+30S[1,5]+36S[6]+5S[3,3]")
        );
        assert_eq!(
            thom_a(4, 1).unwrap(),
            ex("S[1,1,1,1]+9S[1,1,2]+26S[1,3]+24S[4]+10S[2,2]")
        );
        assert!(matches!(
            thom_a(4, 2),
            Err(ThomError::UnsupportedSingularity(_))
        ));
        assert!(matches!(
            thom_a(5, 1),
            Err(ThomError::UnsupportedSingularity(_))
        ));
        assert_eq!(thom_iii22(3).unwrap(), ex("S[4,4]"));
        assert!(thom_iii22(1).is_err());
    }

    #[test]
    fn a4_defect_value() {
        let (defect, s22) = a4_defect(&f_i_r(4, 1));
        assert_eq!(defect, s22.scale(&(-10).into()));
        assert_eq!(
            SchurExpansion::single("2,2".parse().unwrap())
                .evaluate(&VirtualAlphabet::new(x2(), crate::alphabet::e_alphabet())),
            s22
        );
    }

    #[test]
    fn equations_shape() {
        let eqs = restriction_equations(SingularityId::i22(3)).unwrap();
        let labels: Vec<&str> = eqs.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels.len(), 5);
        assert!(labels[0].starts_with("A0: P(-b1 - b2)"));
        assert!(labels[3].starts_with("III22: P(x1 + x2 - [2x1] - [2x2] - [x1+x2] - b1)"));
        let a1 = restriction_equations(SingularityId::a(1, 1)).unwrap();
        assert_eq!(a1.len(), 2);
        assert_eq!(a1[1].rhs, -MPoly::var(crate::poly::Var::x()));
        let iii = restriction_equations(SingularityId::iii22(2)).unwrap();
        assert!(iii
            .iter()
            .any(|e| e.label.starts_with("A3: P(x - [4x] - b1)")));
        assert_eq!(
            restriction_equations(SingularityId::iii22(3))
                .unwrap()
                .len(),
            4
        );
        assert!(restriction_equations(SingularityId::a(4, 2)).is_err());
    }

    #[test]
    fn candidates() {
        let f = default_filter(SingularityId::i22(2));
        assert_eq!(
            candidate_partitions(7, &f),
            vec![
                ex("S[1,3,3]").support().next().unwrap().clone(),
                "3,4".parse().unwrap()
            ]
        );
        assert_eq!(
            candidate_partitions(0, &CandidateFilter::default()).len(),
            1
        );
        let f = default_filter(SingularityId::i22(3));
        let got: Vec<String> = candidate_partitions(10, &f)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, vec!["1,4,5", "2,4,4", "4,6", "5,5"]);
    }

    #[test]
    fn small_solves() {
        let s = solve(SingularityId::a(2, 1), CandidateMode::Default).unwrap();
        assert_eq!(s.expansion, ex("S[1,1] + 2S[2]"));
        assert!(s.heuristic && !s.retried);
        let s = solve(SingularityId::i22(2), CandidateMode::Default).unwrap();
        assert_eq!(s.expansion, ex("S[1,3,3] + 3S[3,4]"));
        let s = solve(SingularityId::iii22(2), CandidateMode::Default).unwrap();
        assert_eq!(s.expansion, ex("S[3,3]"));
    }

    #[test]
    fn verification_reports() {
        let rep = verify(&thom_iii22(2).unwrap(), SingularityId::iii22(2)).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        let rep = verify(&f_i_r(4, 1), SingularityId::a(4, 1)).unwrap();
        let fails: Vec<_> = rep
            .entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .collect();
        assert_eq!(fails.len(), 1);
        assert!(fails[0].equation_label.starts_with("I22"));
    }

    #[test]
    fn appendix_small() {
        let a = appendix_uv(2).unwrap();
        assert_eq!(a.v_at_0, MPoly::constant(5));
        assert!(a.report.passed(), "{}", a.report.to_text());
        let a = appendix_uv(3).unwrap();
        assert!(a.report.passed(), "{}", a.report.to_text());
    }
}
