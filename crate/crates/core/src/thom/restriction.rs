use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{b_alphabet, d_alphabet, e_alphabet, x2, Alphabet, Letter, VirtualAlphabet};
use crate::expansion::SchurExpansion;
use crate::poly::{
    solve_rational_system, to_integer, LinearError, MPoly, Monomial, RatMatrix, Rational, Var,
};
use crate::schur::{resultant, HookSpec, Partition, SchurEvaluator};

use super::{Family, SingularityId, ThomError};

/// `P(substitution) = rhs`.
#[derive(Debug, Clone)]
pub struct RestrictionEquation {
    pub label: String,
    pub substitution: VirtualAlphabet,
    pub rhs: MPoly,
}

impl RestrictionEquation {
    fn vanishing(source: &str, substitution: VirtualAlphabet) -> Self {
        RestrictionEquation {
            label: format!("{source}: P({substitution}) = 0"),
            substitution,
            rhs: MPoly::zero(),
        }
    }

    fn normalization(source: &str, substitution: VirtualAlphabet, rhs: MPoly, shown: &str) -> Self {
        RestrictionEquation {
            label: format!("{source}: P({substitution}) = {shown}"),
            substitution,
            rhs,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RestrictionSystem {
    pub target: SingularityId,
    pub equations: Vec<RestrictionEquation>,
    pub candidates: Vec<Partition>,
    pub codim: u32,
}

/// Which partitions may appear in the unknown polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateMode {
    /// The per-singularity filter.
    #[default]
    Default,
    /// Every partition of the codimension.
    All,
}

/// Filters applied by [`candidate_partitions`].
#[derive(Debug, Clone, Default)]
pub struct CandidateFilter {
    pub max_length: Option<usize>,
    pub must_contain: Option<Partition>,
    pub hook: Option<HookSpec>,
}

pub fn candidate_partitions(codim: u32, filter: &CandidateFilter) -> Vec<Partition> {
    Partition::of_weight(codim, filter.max_length.unwrap_or(codim as usize))
        .into_iter()
        .filter(|p| filter.must_contain.as_ref().is_none_or(|q| p.contains(q)))
        .filter(|p| filter.hook.is_none_or(|h| p.in_hook(h)))
        .collect()
}

/// The default filter for `target`. The filter for `A_i` (at most `i` parts) is a
/// heuristic, reported as such by [`solve`].
pub fn default_filter(target: SingularityId) -> CandidateFilter {
    let r = target.r;
    match target.family {
        Family::A(i) => CandidateFilter {
            max_length: Some(i as usize),
            ..CandidateFilter::default()
        },
        Family::I22 => CandidateFilter {
            max_length: Some(3),
            must_contain: Some(Partition::rectangle(2, r + 1)),
            hook: None,
        },
        Family::III22 => CandidateFilter {
            max_length: Some(2),
            ..CandidateFilter::default()
        },
    }
}

fn x_alphabet() -> Alphabet {
    Alphabet::var(Var::x())
}

fn boxed_x(p: i64) -> Alphabet {
    Alphabet::single(Letter::scaled(p, Var::x()))
}

// x - [px] - B_n
fn a_point(p: i64, n: usize) -> VirtualAlphabet {
    VirtualAlphabet::new(x_alphabet(), boxed_x(p).sum(&b_alphabet(n)))
}

// x + [2x] + ... + [ix]
fn a_source(i: i64) -> Alphabet {
    x_alphabet().sum(&Alphabet::from_letters(
        (2..=i).map(|p| Letter::scaled(p, Var::x())),
    ))
}

fn a_normalization(i: u32, n: usize) -> RestrictionEquation {
    let i = i64::from(i);
    let minus = boxed_x(i + 1).sum(&b_alphabet(n));
    let rhs = resultant(&a_source(i), &minus);
    let shown = format!("R({}, {})", a_source(i), minus);
    RestrictionEquation::normalization(&format!("A{i}"), a_point(i + 1, n), rhs, &shown)
}

fn a_vanishings(upto: u32, n: usize, out: &mut Vec<RestrictionEquation>) {
    out.push(RestrictionEquation::vanishing(
        "A0",
        VirtualAlphabet::negative(b_alphabet(n)),
    ));
    for p in 1..=upto {
        out.push(RestrictionEquation::vanishing(
            &format!("A{p}"),
            a_point(i64::from(p) + 1, n),
        ));
    }
}

// X2 - D - B_n
fn iii22_point(n: usize) -> VirtualAlphabet {
    VirtualAlphabet::new(x2(), d_alphabet().sum(&b_alphabet(n)))
}

// X2 - E - B_n
fn i22_point(n: usize) -> VirtualAlphabet {
    VirtualAlphabet::new(x2(), e_alphabet().sum(&b_alphabet(n)))
}

/// Vanishing conditions for the other singularities of codimension at most that of
/// `target`, followed by the normalization `P(c(target)) = e(target)`.
pub fn restriction_equations(target: SingularityId) -> Result<Vec<RestrictionEquation>, ThomError> {
    let r = target.r;
    if r == 0 {
        return Err(ThomError::UnsupportedSingularity(format!(
            "{target} with r = 0"
        )));
    }
    let n = (r - 1) as usize;
    let mut eqs = Vec::new();
    match target.family {
        Family::A(i @ 1..=3) => {
            a_vanishings(i - 1, n, &mut eqs);
            eqs.push(a_normalization(i, n));
            if i == 3 && r >= 2 {
                eqs.push(RestrictionEquation::vanishing("III22", iii22_point(n - 1)));
            }
        }
        Family::A(4) if r == 1 => {
            a_vanishings(3, 0, &mut eqs);
            eqs.push(a_normalization(4, 0));
            eqs.push(RestrictionEquation::vanishing("I22", i22_point(0)));
        }
        Family::A(_) => return Err(ThomError::UnsupportedSingularity(target.to_string())),
        Family::I22 => {
            a_vanishings(2, n, &mut eqs);
            if r >= 2 {
                eqs.push(RestrictionEquation::vanishing("III22", iii22_point(n - 1)));
            }
            let plus = x2().sum(&Alphabet::single(Letter::linear(
                0,
                [(Var::xi(1), 1), (Var::xi(2), 1)],
            )));
            let rhs = &resultant(&x2(), &e_alphabet()) * &resultant(&plus, &b_alphabet(n));
            let shown = format!(
                "R({}, {}) R({}, {})",
                x2(),
                e_alphabet(),
                plus,
                b_alphabet(n)
            );
            eqs.push(RestrictionEquation::normalization(
                "I22",
                i22_point(n),
                rhs,
                &shown,
            ));
        }
        Family::III22 => {
            if r < 2 {
                return Err(ThomError::UnsupportedSingularity(format!(
                    "{target} with r = {r}"
                )));
            }
            a_vanishings(2, n, &mut eqs);
            if r == 2 {
                eqs.push(RestrictionEquation::vanishing("A3", a_point(4, n)));
            }
            let minus = d_alphabet().sum(&b_alphabet(n - 1));
            let rhs = resultant(&x2(), &minus);
            let shown = format!("R({}, {})", x2(), minus);
            eqs.push(RestrictionEquation::normalization(
                "III22",
                iii22_point(n - 1),
                rhs,
                &shown,
            ));
        }
    }
    Ok(eqs)
}

impl RestrictionSystem {
    pub fn new(target: SingularityId, mode: CandidateMode) -> Result<Self, ThomError> {
        let codim = target.codim();
        let filter = match mode {
            CandidateMode::Default => default_filter(target),
            CandidateMode::All => CandidateFilter::default(),
        };
        Ok(RestrictionSystem {
            target,
            equations: restriction_equations(target)?,
            candidates: candidate_partitions(codim, &filter),
            codim,
        })
    }
}

/// Finds the unique integer combination of the candidates satisfying every equation,
/// matching coefficients of all monomials.
pub fn solve_restriction_system(sys: &RestrictionSystem) -> Result<SchurExpansion, ThomError> {
    if sys.candidates.is_empty() {
        return Err(ThomError::NoCandidates);
    }
    let n = sys.candidates.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for eq in &sys.equations {
        let mut ev = SchurEvaluator::structural(&eq.substitution);
        let values: Vec<MPoly> = sys.candidates.iter().map(|p| ev.schur(p)).collect();
        let monomials: BTreeSet<&Monomial> = values
            .iter()
            .chain(std::iter::once(&eq.rhs))
            .flat_map(|q| q.terms().map(|(m, _)| m))
            .collect();
        for m in monomials {
            rows.push(
                values
                    .iter()
                    .map(|v| Rational::from_integer(v.coeff(m)))
                    .collect(),
            );
            rhs.push(Rational::from_integer(eq.rhs.coeff(m)));
        }
    }
    let a = RatMatrix::from_rows(rows, n);
    let sol = solve_rational_system(&a, &rhs).map_err(|e| match e {
        LinearError::InconsistentSystem => ThomError::InconsistentSystem,
        e @ LinearError::DimensionMismatch { .. } => unreachable!("{e}"),
    })?;
    if sol.kernel_dim > 0 {
        return Err(ThomError::Underdetermined {
            kernel_dim: sol.kernel_dim,
        });
    }
    let mut out = SchurExpansion::new();
    for (p, q) in sys.candidates.iter().zip(&sol.solution) {
        let c = to_integer(q).ok_or(ThomError::NonIntegerSolution)?;
        out.add_term(p.clone(), &c);
    }
    Ok(out.with_meta(sys.target.r, sys.target.to_string()))
}

/// Result of [`solve`].
#[derive(Debug, Clone)]
pub struct Solution {
    pub expansion: SchurExpansion,
    pub mode: CandidateMode,
    /// The candidate set came from an unproved filter.
    pub heuristic: bool,
    /// The default candidates were underdetermined and the full set was used.
    pub retried: bool,
    pub candidates: usize,
    pub equations: usize,
}

/// Solves the restriction system of `target`; with the default candidates of the `A`
/// family an underdetermined system is retried over all partitions.
pub fn solve(target: SingularityId, mode: CandidateMode) -> Result<Solution, ThomError> {
    let sys = RestrictionSystem::new(target, mode)?;
    let heuristic = mode == CandidateMode::Default && matches!(target.family, Family::A(_));
    match solve_restriction_system(&sys) {
        Ok(expansion) => Ok(Solution {
            expansion,
            mode,
            heuristic,
            retried: false,
            candidates: sys.candidates.len(),
            equations: sys.equations.len(),
        }),
        Err(ThomError::Underdetermined { .. } | ThomError::NoCandidates) if heuristic => {
            let mut s = solve(target, CandidateMode::All)?;
            s.retried = true;
            Ok(s)
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationEntry {
    pub equation_label: String,
    pub status: Status,
    /// `P(substitution) - rhs`, `0` on success.
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.target);
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            s.push_str(&format!("  {status}  {}\n", e.equation_label));
            if e.status == Status::Fail {
                s.push_str(&format!("        residual: {}\n", e.residual));
            }
        }
        s
    }
}

/// Evaluates `e` on every restriction equation of `target`.
pub fn verify(e: &SchurExpansion, target: SingularityId) -> Result<VerificationReport, ThomError> {
    let entries = restriction_equations(target)?
        .into_iter()
        .map(|eq| {
            let value = e.evaluate_with(&mut SchurEvaluator::structural(&eq.substitution));
            let residual = &value - &eq.rhs;
            VerificationEntry {
                equation_label: eq.label,
                status: if residual.is_zero() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                residual: residual.to_string(),
            }
        })
        .collect();
    Ok(VerificationReport {
        target: format!("{target} r={}", target.r),
        entries,
    })
}
