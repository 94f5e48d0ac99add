//! Integer linear combinations of Schur functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{b_alphabet, Alphabet, VirtualAlphabet};
use crate::poly::{
    solve_rational_system, to_integer, LinearError, MPoly, Monomial, RatMatrix, Rational,
};
use crate::schur::{HookSpec, Partition, SchurEvaluator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("partition {0} has more than three parts")]
    LengthExceeded(Partition),
    #[error("polynomial is not in the span of the Schur basis")]
    NotInSpan,
    #[error("expansion has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("basis evaluations are dependent (kernel dimension {0})")]
    NotUnique(usize),
    #[error("cannot parse expansion `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid expansion JSON: {0}")]
    Json(String),
}

/// A finitely supported map from partitions to nonzero integers, optionally tagged with
/// the parameter `r` and a name.
///
/// Equality compares terms only.
#[derive(Clone, Default)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, BigInt>,
    pub r: Option<u32>,
    pub name: Option<String>,
}

impl SchurExpansion {
    pub fn new() -> Self {
        SchurExpansion::default()
    }

    pub fn single(p: Partition) -> Self {
        SchurExpansion::from_terms([(p, BigInt::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, BigInt)>>(terms: I) -> Self {
        let mut e = SchurExpansion::new();
        for (p, c) in terms {
            e.add_term(p, &c);
        }
        e
    }

    pub fn with_meta(mut self, r: u32, name: impl Into<String>) -> Self {
        self.r = Some(r);
        self.name = Some(name.into());
        self
    }

    pub fn add_term(&mut self, p: Partition, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Terms in increasing partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all terms, if there is one.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(Partition::weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_empty() || self.weight().is_some()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, k: &BigInt) -> SchurExpansion {
        let mut out =
            SchurExpansion::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), c * k)));
        out.r = self.r;
        out.name = self.name.clone();
        out
    }

    pub fn evaluate(&self, v: &VirtualAlphabet) -> MPoly {
        self.evaluate_with(&mut SchurEvaluator::new(v))
    }

    pub fn evaluate_with(&self, ev: &mut SchurEvaluator) -> MPoly {
        let mut acc = MPoly::zero();
        for (p, c) in &self.terms {
            let s = ev.schur(p);
            if !s.is_zero() {
                acc += &s.scale(c);
            }
        }
        acc
    }

    /// `τ`: adds one to each of three parts, padding shorter partitions with zeros.
    pub fn tau_shift(&self) -> Result<SchurExpansion, ExpansionError> {
        let mut out = SchurExpansion::new();
        for (p, c) in &self.terms {
            if p.len() > 3 {
                return Err(ExpansionError::LengthExceeded(p.clone()));
            }
            out.add_term(p.add_to_rows(3, 1), c);
        }
        Ok(out)
    }

    /// Compact rendering such as `S_{133}+3S_{34}`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("expansion serializes")
    }

    pub fn from_json(s: &str) -> Result<SchurExpansion, ExpansionError> {
        serde_json::from_str(s).map_err(|e| ExpansionError::Json(e.to_string()))
    }
}

impl PartialEq for SchurExpansion {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SchurExpansion {}

impl Add for &SchurExpansion {
    type Output = SchurExpansion;
    fn add(self, rhs: &SchurExpansion) -> SchurExpansion {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c);
        }
        out
    }
}

impl Sub for &SchurExpansion {
    type Output = SchurExpansion;
    fn sub(self, rhs: &SchurExpansion) -> SchurExpansion {
        self + &(-rhs)
    }
}

impl Neg for &SchurExpansion {
    type Output = SchurExpansion;
    fn neg(self) -> SchurExpansion {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "S_{{{}}}", p.compact())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_err(input: &str, reason: impl Into<String>) -> ExpansionError {
    ExpansionError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

impl FromStr for SchurExpansion {
    type Err = ExpansionError;

    /// Accepts `S[1,3,3] + 3S[3,4]`, `3*S[3,4]`, `S_{133}+3S_{34}` and `S_{6,10}`;
    /// `0` is the empty expansion.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = SchurExpansion::new();
        if src == "0" {
            return Ok(out);
        }
        let mut rest = src.as_str();
        if rest.is_empty() {
            return Err(parse_err(s, "empty input"));
        }
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = BigInt::one();
            match rest.as_bytes()[0] {
                b'+' if !first => rest = &rest[1..],
                b'-' => {
                    sign = -sign;
                    rest = &rest[1..];
                }
                _ if first => {}
                _ => return Err(parse_err(s, format!("expected `+` or `-` at `{rest}`"))),
            }
            first = false;
            let digits = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let coeff = if digits == 0 {
                BigInt::one()
            } else {
                rest[..digits].parse::<BigInt>().expect("digits")
            };
            rest = rest[digits..].trim_start_matches('*');
            rest = rest
                .strip_prefix('S')
                .ok_or_else(|| parse_err(s, format!("expected `S` at `{rest}`")))?;
            let (body, tail) = if let Some(r) = rest.strip_prefix('[') {
                let end = r.find(']').ok_or_else(|| parse_err(s, "missing `]`"))?;
                (r[..end].to_string(), &r[end + 1..])
            } else if let Some(r) = rest.strip_prefix("_{") {
                let end = r.find('}').ok_or_else(|| parse_err(s, "missing `}`"))?;
                (r[..end].to_string(), &r[end + 1..])
            } else if let Some(r) = rest.strip_prefix('_') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                (r[..end].to_string(), &r[end..])
            } else {
                return Err(parse_err(s, "expected `[`, `_{` or `_` after `S`"));
            };
            let p: Partition = body
                .parse()
                .map_err(|e: crate::schur::PartitionError| parse_err(s, e.to_string()))?;
            out.add_term(p, &(sign * coeff));
            rest = tail;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    partition: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonExpansion {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    terms: Vec<JsonTerm>,
}

impl Serialize for SchurExpansion {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        JsonExpansion {
            r: self.r,
            name: self.name.clone(),
            terms: self
                .terms
                .iter()
                .map(|(p, c)| JsonTerm {
                    partition: p.increasing(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SchurExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = JsonExpansion::deserialize(de)?;
        let mut out = SchurExpansion::new();
        for t in j.terms {
            let p = Partition::from_increasing(&t.partition).map_err(D::Error::custom)?;
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            out.add_term(p, &c);
        }
        out.r = j.r;
        out.name = j.name;
        Ok(out)
    }
}

/// `A_w - B_w` in fresh `a`/`b` variables: its hook holds every partition of weight `w`.
pub fn default_template(weight: u32) -> VirtualAlphabet {
    let w = weight as usize;
    VirtualAlphabet::new(Alphabet::variables('a', w), b_alphabet(w))
}

/// Writes `p` as an integer combination of `S_I(template)` over the partitions `I` of
/// `weight` lying in the template's hook, by matching every monomial coefficient.
pub fn expand_in_schur_basis(
    p: &MPoly,
    template: &VirtualAlphabet,
    weight: u32,
) -> Result<SchurExpansion, ExpansionError> {
    let hook = HookSpec::new(template.plus.len(), template.minus.len() as u32);
    let basis: Vec<Partition> = Partition::of_weight(weight, weight as usize)
        .into_iter()
        .filter(|i| i.in_hook(hook))
        .collect();
    let mut ev = SchurEvaluator::structural(template);
    let values: Vec<MPoly> = basis.iter().map(|i| ev.schur(i)).collect();
    let monomials: BTreeSet<Monomial> = values
        .iter()
        .chain(std::iter::once(p))
        .flat_map(|q| q.terms().map(|(m, _)| m.clone()))
        .collect();
    let rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|m| {
            values
                .iter()
                .map(|q| Rational::from_integer(q.coeff(m)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = monomials
        .iter()
        .map(|m| Rational::from_integer(p.coeff(m)))
        .collect();
    let a = RatMatrix::from_rows(rows, basis.len());
    let sol = match solve_rational_system(&a, &rhs) {
        Ok(s) => s,
        Err(LinearError::InconsistentSystem) => return Err(ExpansionError::NotInSpan),
        Err(e @ LinearError::DimensionMismatch { .. }) => unreachable!("{e}"),
    };
    if sol.kernel_dim > 0 {
        return Err(ExpansionError::NotUnique(sol.kernel_dim));
    }
    let mut out = SchurExpansion::new();
    for (i, q) in basis.into_iter().zip(&sol.solution) {
        let c = to_integer(q).ok_or(ExpansionError::NonIntegerCoefficients)?;
        out.add_term(i, &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{e_alphabet, x2};
    use crate::poly::Var;
    use crate::schur::resultant;

    fn ex(s: &str) -> SchurExpansion {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let e = ex("S[1,3,3] + 3S[3,4]");
        assert_eq!(e.to_string(), "S_{133}+3S_{34}");
        assert_eq!(ex("S_{133}+3S_{34}"), e);
        assert_eq!(ex("3*S[3,4] + S_133"), e);
        let big = ex("31S_{6,10}+25S_{79}+10S_{88}");
        assert_eq!(big.to_string(), "31S_{6,10}+25S_{79}+10S_{88}");
        assert_eq!(ex("S[2,2] - S[2,2]"), SchurExpansion::new());
        assert_eq!(SchurExpansion::new().to_string(), "0");
        assert_eq!(ex("-2S_{4}+S_{13}").to_string(), "S_{13}-2S_{4}");
        assert!("3S".parse::<SchurExpansion>().is_err());
        assert!("S[1,2] 3S[3]".parse::<SchurExpansion>().is_err());
    }

    #[test]
    fn json_format() {
        let e = ex("S[1,3,3] + 3S[3,4]").with_meta(2, "I22");
        let j = e.to_json();
        assert_eq!(
            j,
            r#"{"r":2,"name":"I22","terms":[{"partition":[1,3,3],"coeff":"1"},{"partition":[3,4],"coeff":"3"}]}"#
        );
        let back = SchurExpansion::from_json(&j).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.r, Some(2));
        assert_eq!(back.name.as_deref(), Some("I22"));
        assert!(
            SchurExpansion::from_json(r#"{"terms":[{"partition":[3,1],"coeff":"1"}]}"#).is_err()
        );
        let huge = ex("123456789012345678901234567890S[2]");
        assert_eq!(SchurExpansion::from_json(&huge.to_json()).unwrap(), huge);
    }

    #[test]
    fn evaluation() {
        let v = VirtualAlphabet::new(x2(), e_alphabet());
        assert_eq!(ex("S[2,2]").evaluate(&v), resultant(&x2(), &e_alphabet()));
        assert!(SchurExpansion::new().evaluate(&v).is_zero());
        let v: VirtualAlphabet = "x - [2x] - B1".parse().unwrap();
        assert!(ex("S[1,3,3] + 3S[3,4]").evaluate(&v).is_zero());
    }

    #[test]
    fn tau() {
        assert_eq!(ex("S[2,2]").tau_shift().unwrap(), ex("S[1,3,3]"));
        assert_eq!(ex("3S[3,4]").tau_shift().unwrap(), ex("3S[1,4,5]"));
        assert!(SchurExpansion::new().tau_shift().unwrap().is_empty());
        assert!(matches!(
            ex("S[1,1,1,1]").tau_shift(),
            Err(ExpansionError::LengthExceeded(_))
        ));
    }

    #[test]
    fn basis_expansion() {
        let t = default_template(4);
        let e = ex("S[1,3,3] + 3S[3,4]");
        let v = VirtualAlphabet::new(Alphabet::variables('a', 3), b_alphabet(2));
        assert_eq!(expand_in_schur_basis(&e.evaluate(&v), &v, 7).unwrap(), e);
        let a2b2 = VirtualAlphabet::new(Alphabet::variables('a', 2), b_alphabet(2));
        assert_eq!(
            expand_in_schur_basis(&resultant(&a2b2.plus, &a2b2.minus), &a2b2, 4).unwrap(),
            ex("S[2,2]")
        );
        let half = ex("S[1,3]").evaluate(&t);
        assert_eq!(
            expand_in_schur_basis(&(&half + &MPoly::var(Var::a(1)).pow(4)), &t, 4),
            Err(ExpansionError::NotInSpan)
        );
    }
}
