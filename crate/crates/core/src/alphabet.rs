//! Formal alphabets (multisets of letters) and virtual alphabets `A - B`.
//!
//! A letter is an integer linear form in the variables. A letter is atomic: the boxed
//! letter `[2x]` is one letter whose value is `2x`, while the alphabet `2x` is two copies
//! of the letter `x`. Likewise the integer alphabet `2` is two copies of `1`, distinct
//! from the boxed letter `[2]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

use crate::poly::{MPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("product {0} * {1} is not a linear form")]
    UnsupportedProduct(Letter, Letter),
    #[error("unknown standard alphabet `{0}`")]
    UnknownSpec(String),
    #[error("cannot parse alphabet `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// An integer linear form `c + Σ a_v·v`, treated as a single letter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    // sorted by variable, no zero coefficients
    coeffs: SmallVec<[(Var, i64); 2]>,
    constant: i64,
}

impl Letter {
    pub fn constant(c: i64) -> Self {
        Letter {
            coeffs: SmallVec::new(),
            constant: c,
        }
    }

    pub fn var(v: Var) -> Self {
        Letter::scaled(1, v)
    }

    pub fn scaled(c: i64, v: Var) -> Self {
        Letter::linear(0, [(v, c)])
    }

    pub fn linear<I: IntoIterator<Item = (Var, i64)>>(constant: i64, terms: I) -> Self {
        let mut coeffs: SmallVec<[(Var, i64); 2]> = SmallVec::new();
        let mut items: Vec<(Var, i64)> = terms.into_iter().collect();
        items.sort_by_key(|a| a.0);
        for (v, c) in items {
            match coeffs.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => coeffs.push((v, c)),
            }
        }
        coeffs.retain(|p| p.1 != 0);
        Letter { coeffs, constant }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The variable `v` itself (coefficient one, no constant).
    pub fn as_plain_var(&self) -> Option<Var> {
        match (self.constant, self.coeffs.as_slice()) {
            (0, [(v, 1)]) => Some(*v),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> i64 {
        self.constant
    }

    pub fn terms(&self) -> &[(Var, i64)] {
        &self.coeffs
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::linear(self.constant, self.coeffs.iter().copied())
    }

    pub fn neg(&self) -> Letter {
        Letter::linear(-self.constant, self.coeffs.iter().map(|&(v, c)| (v, -c)))
    }

    pub fn add(&self, other: &Letter) -> Letter {
        Letter::linear(
            self.constant + other.constant,
            self.coeffs.iter().chain(other.coeffs.iter()).copied(),
        )
    }

    pub fn scale_int(&self, k: i64) -> Letter {
        Letter::linear(
            self.constant * k,
            self.coeffs.iter().map(|&(v, c)| (v, c * k)),
        )
    }

    /// Product of two letters, defined when at least one of them is an integer.
    pub fn mul(&self, other: &Letter) -> Result<Letter, AlphabetError> {
        if other.is_constant() {
            Ok(self.scale_int(other.constant))
        } else if self.is_constant() {
            Ok(other.scale_int(self.constant))
        } else {
            Err(AlphabetError::UnsupportedProduct(
                self.clone(),
                other.clone(),
            ))
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(v, c) in &self.coeffs {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            match c.abs() {
                1 => write!(f, "{sign}{v}")?,
                a => write!(f, "{sign}{a}{v}")?,
            }
            first = false;
        }
        if self.constant != 0 || first {
            if self.constant >= 0 && !first {
                write!(f, "+")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// A finite multiset of letters.
#[derive(Clone, Default)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    pub fn empty() -> Self {
        Alphabet::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Alphabet {
            letters: letters.into_iter().collect(),
        }
    }

    pub fn single(l: Letter) -> Self {
        Alphabet { letters: vec![l] }
    }

    /// The integer alphabet `n`: `n` copies of the letter `1`.
    pub fn integer(n: usize) -> Self {
        Alphabet::from_letters(std::iter::repeat_n(Letter::constant(1), n))
    }

    /// The boxed integer `[n]`: one letter of value `n`.
    pub fn boxed(n: i64) -> Self {
        Alphabet::single(Letter::constant(n))
    }

    /// `[2] + [3] + ... + [i]`, empty for `i < 2`.
    pub fn boxed_range(from: i64, to: i64) -> Self {
        Alphabet::from_letters((from..=to).map(Letter::constant))
    }

    /// `(v_1, ..., v_n)` for the given variable family.
    pub fn variables(family: char, n: usize) -> Self {
        Alphabet::from_letters((1..=n as u32).map(|i| Letter::var(Var::new(family, i))))
    }

    pub fn var(v: Var) -> Self {
        Alphabet::single(Letter::var(v))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Multiset union `A + B`.
    pub fn sum(&self, other: &Alphabet) -> Alphabet {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Alphabet { letters }
    }

    /// Letterwise product `A·v`.
    pub fn scale(&self, v: &Letter) -> Result<Alphabet, AlphabetError> {
        Ok(Alphabet {
            letters: self
                .letters
                .iter()
                .map(|l| l.mul(v))
                .collect::<Result<_, _>>()?,
        })
    }

    /// `A*`: every letter negated.
    pub fn star(&self) -> Alphabet {
        Alphabet::from_letters(self.letters.iter().map(Letter::neg))
    }

    fn sorted(&self) -> Vec<&Letter> {
        let mut v: Vec<&Letter> = self.letters.iter().collect();
        v.sort();
        v
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl Eq for Alphabet {}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "0");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match l.as_plain_var() {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "[{l}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

/// The formal difference `plus - minus`. Common letters are never cancelled.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct VirtualAlphabet {
    pub plus: Alphabet,
    pub minus: Alphabet,
}

impl VirtualAlphabet {
    pub fn new(plus: Alphabet, minus: Alphabet) -> Self {
        VirtualAlphabet { plus, minus }
    }

    pub fn zero() -> Self {
        VirtualAlphabet::default()
    }

    pub fn positive(plus: Alphabet) -> Self {
        VirtualAlphabet::new(plus, Alphabet::empty())
    }

    pub fn negative(minus: Alphabet) -> Self {
        VirtualAlphabet::new(Alphabet::empty(), minus)
    }

    /// `-(A - B) = B - A`.
    pub fn negated(&self) -> Self {
        VirtualAlphabet::new(self.minus.clone(), self.plus.clone())
    }

    /// Adds `c` to both sides: `(A + C) - (B + C)`.
    pub fn pad(&self, c: &Alphabet) -> Self {
        VirtualAlphabet::new(self.plus.sum(c), self.minus.sum(c))
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.plus
            .letters()
            .iter()
            .chain(self.minus.letters())
            .flat_map(|l| l.terms().iter().map(|p| p.0))
            .collect()
    }
}

impl fmt::Display for VirtualAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.plus.is_empty() && !self.minus.is_empty() {
            write!(f, "-")?;
        } else {
            write!(f, "{}", self.plus)?;
            if !self.minus.is_empty() {
                write!(f, " - ")?;
            }
        }
        for (k, l) in self.minus.letters().iter().enumerate() {
            if k > 0 {
                write!(f, " - ")?;
            }
            match l.as_plain_var() {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "[{l}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VirtualAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualAlphabet({self})")
    }
}

/// `B_n = (b_1..b_n)`.
pub fn b_alphabet(n: usize) -> Alphabet {
    Alphabet::variables('b', n)
}

/// `X_2 = (x_1, x_2)`.
pub fn x2() -> Alphabet {
    Alphabet::variables('x', 2)
}

/// `E = [2x1] + [2x2]`.
pub fn e_alphabet() -> Alphabet {
    Alphabet::from_letters([Letter::scaled(2, Var::xi(1)), Letter::scaled(2, Var::xi(2))])
}

/// `D = [2x1] + [2x2] + [x1+x2]`.
pub fn d_alphabet() -> Alphabet {
    e_alphabet().sum(&Alphabet::single(Letter::linear(
        0,
        [(Var::xi(1), 1), (Var::xi(2), 1)],
    )))
}

/// Looks up a named alphabet: `B<n>`, `A<n>`, `Y<n>`, `X2`, `D`, `E`.
///
/// `size` is used when the name carries no cardinality (e.g. `("B", Some(3))`).
pub fn standard_alphabet(name: &str, size: Option<usize>) -> Result<Alphabet, AlphabetError> {
    let unknown = || AlphabetError::UnknownSpec(name.to_string());
    let (head, digits) = name.split_at(
        name.find(|c: char| c.is_ascii_digit())
            .unwrap_or(name.len()),
    );
    let n = if digits.is_empty() {
        size
    } else {
        Some(digits.parse::<usize>().map_err(|_| unknown())?)
    };
    match (head, n) {
        ("B", Some(n)) => Ok(b_alphabet(n)),
        ("A", Some(n)) => Ok(Alphabet::variables('a', n)),
        ("Y", Some(n)) => Ok(Alphabet::variables('y', n)),
        ("X", Some(2)) | ("X", None) => Ok(x2()),
        ("D", None) => Ok(d_alphabet()),
        ("E", None) => Ok(e_alphabet()),
        _ => Err(unknown()),
    }
}

fn parse_err(input: &str, reason: impl Into<String>) -> AlphabetError {
    AlphabetError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

// Splits on `sep` at bracket depth zero. The first piece may be empty.
fn split_top(s: &str, seps: &[char]) -> Result<Vec<(char, String)>, AlphabetError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut cur_sep = '+';
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err(s, "unbalanced `]`"));
                }
                cur.push(ch);
            }
            c if depth == 0 && seps.contains(&c) => {
                out.push((cur_sep, std::mem::take(&mut cur)));
                cur_sep = c;
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(parse_err(s, "unbalanced `[`"));
    }
    out.push((cur_sep, cur));
    Ok(out)
}

// `[coef][*]var` or an integer; coefficient defaults to 1.
fn parse_scaled_term(t: &str, whole: &str) -> Result<(i64, Option<Var>), AlphabetError> {
    let t = t.trim();
    let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
    let (num, rest) = t.split_at(split);
    let rest = rest.trim_start_matches('*').trim();
    let coef = if num.is_empty() {
        1
    } else {
        num.parse::<i64>()
            .map_err(|_| parse_err(whole, format!("bad integer `{num}`")))?
    };
    if rest.is_empty() {
        if num.is_empty() {
            return Err(parse_err(whole, "empty term"));
        }
        Ok((coef, None))
    } else {
        let v = rest
            .parse::<Var>()
            .map_err(|e| parse_err(whole, e.to_string()))?;
        Ok((coef, Some(v)))
    }
}

impl FromStr for Letter {
    type Err = AlphabetError;

    /// Parses a linear form such as `2x`, `x1+x2`, `x1-2x2`, `-3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pieces = split_top(s.trim(), &['+', '-'])?;
        let mut constant = 0i64;
        let mut terms = Vec::new();
        for (k, (sign, piece)) in pieces.iter().enumerate() {
            if piece.trim().is_empty() {
                if k == 0 {
                    continue;
                }
                return Err(parse_err(s, "dangling sign"));
            }
            let sgn = if *sign == '-' { -1 } else { 1 };
            match parse_scaled_term(piece, s)? {
                (c, None) => constant += sgn * c,
                (c, Some(v)) => terms.push((v, sgn * c)),
            }
        }
        Ok(Letter::linear(constant, terms))
    }
}

fn parse_summand(t: &str, whole: &str) -> Result<Alphabet, AlphabetError> {
    let t = t.trim();
    if t.is_empty() {
        return Err(parse_err(whole, "empty summand"));
    }
    if t == "0" || t == "∅" {
        return Ok(Alphabet::empty());
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        return Ok(Alphabet::single(inner.parse()?));
    }
    if let Some(n) = t.strip_prefix("int:") {
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_err(whole, format!("bad integer alphabet `{t}`")))?;
        return Ok(Alphabet::integer(n));
    }
    if t.starts_with(|c: char| c.is_ascii_uppercase()) {
        return standard_alphabet(t, None);
    }
    match parse_scaled_term(t, whole)? {
        (n, None) => usize::try_from(n)
            .map(Alphabet::integer)
            .map_err(|_| parse_err(whole, "negative integer alphabet")),
        (n, Some(v)) => {
            let n = usize::try_from(n).map_err(|_| parse_err(whole, "negative multiplicity"))?;
            Ok(Alphabet::from_letters(std::iter::repeat_n(
                Letter::var(v),
                n,
            )))
        }
    }
}

impl FromStr for Alphabet {
    type Err = AlphabetError;

    /// Parses a `+`-separated sum such as `X2 + [x1+x2] + B3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Alphabet::empty());
        }
        let mut out = Alphabet::empty();
        for (_, piece) in split_top(s, &['+'])? {
            out = out.sum(&parse_summand(&piece, s)?);
        }
        Ok(out)
    }
}

impl FromStr for VirtualAlphabet {
    type Err = AlphabetError;

    /// Parses `plus - m1 - m2 ...`, e.g. `X2 - [2x1] - [2x2] - B1` or `-B3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = split_top(s, &['-'])?.into_iter();
        let plus: Alphabet = parts.next().map(|p| p.1).unwrap_or_default().parse()?;
        let mut minus = Alphabet::empty();
        for (_, piece) in parts {
            if piece.trim().is_empty() {
                return Err(parse_err(s, "empty minus part"));
            }
            minus = minus.sum(&piece.parse()?);
        }
        Ok(VirtualAlphabet::new(plus, minus))
    }
}

impl Ord for Alphabet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sorted().cmp(&other.sorted())
    }
}

impl PartialOrd for Alphabet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Letter {
        s.parse().unwrap()
    }

    #[test]
    fn sum_builds_d() {
        let d = Alphabet::single(l("2x1"))
            .sum(&Alphabet::single(l("2x2")))
            .sum(&Alphabet::single(l("x1+x2")));
        assert_eq!(d, d_alphabet());
        assert_eq!(d.len(), 3);
        assert_eq!(d.sum(&Alphabet::empty()), d);
    }

    #[test]
    fn multiset_semantics() {
        let x = Alphabet::var(Var::x());
        let xx = x.sum(&x);
        assert_eq!(xx.len(), 2);
        assert_ne!(xx, x);
    }

    #[test]
    fn scaling_by_a_variable() {
        let a = Alphabet::boxed_range(2, 3);
        let x = Letter::var(Var::x());
        let ax = a.scale(&x).unwrap();
        assert_eq!(ax, Alphabet::from_letters([l("2x"), l("3x")]));
        assert_eq!(a.scale(&Letter::constant(1)).unwrap(), a);
        let a4 = Alphabet::boxed_range(2, 4).scale(&x).unwrap();
        assert_eq!(a4, Alphabet::from_letters([l("2x"), l("3x"), l("4x")]));
        assert!(matches!(
            Alphabet::var(Var::x()).scale(&x),
            Err(AlphabetError::UnsupportedProduct(..))
        ));
    }

    #[test]
    fn standard_names() {
        assert_eq!(
            standard_alphabet("B3", None).unwrap(),
            Alphabet::from_letters([l("b1"), l("b2"), l("b3")])
        );
        assert_eq!(standard_alphabet("B", Some(2)).unwrap(), b_alphabet(2));
        assert_eq!(standard_alphabet("X2", None).unwrap(), x2());
        assert_eq!(
            standard_alphabet("E", None).unwrap(),
            Alphabet::from_letters([l("2x1"), l("2x2")])
        );
        assert!(matches!(
            standard_alphabet("Q7", None),
            Err(AlphabetError::UnknownSpec(_))
        ));
    }

    #[test]
    fn letter_parsing_and_display() {
        assert_eq!(l("x1+x2").to_string(), "x1+x2");
        assert_eq!(l("x1-2x2").to_string(), "x1-2x2");
        assert_eq!(l("-3").to_string(), "-3");
        assert_eq!(l("2*x + 1").to_string(), "2x+1");
        assert_eq!(l("x - x").to_string(), "0");
        assert!("x+".parse::<Letter>().is_err());
    }

    #[test]
    fn virtual_alphabet_syntax() {
        let v: VirtualAlphabet = "X2 - [2x1] - [2x2]".parse().unwrap();
        assert_eq!(v.plus, x2());
        assert_eq!(v.minus, e_alphabet());
        let v: VirtualAlphabet = "x - B2 - [3x]".parse().unwrap();
        assert_eq!(v.plus.len(), 1);
        assert_eq!(v.minus.len(), 3);
        let v: VirtualAlphabet = "-B3".parse().unwrap();
        assert!(v.plus.is_empty());
        assert_eq!(v.minus, b_alphabet(3));
        let v: VirtualAlphabet = "int:2".parse().unwrap();
        assert_eq!(v.plus, Alphabet::integer(2));
        let v: VirtualAlphabet = "3x".parse().unwrap();
        assert_eq!(v.plus.len(), 3);
        let v: VirtualAlphabet = "X2 + [x1+x2] - D - B1".parse().unwrap();
        assert_eq!(v.plus.len(), 3);
        assert_eq!(v.minus.len(), 4);
        assert_eq!(
            v.to_string(),
            "x1 + x2 + [x1+x2] - [2x1] - [2x2] - [x1+x2] - b1"
        );
        assert!("X2 - ".parse::<VirtualAlphabet>().is_err());
        assert!("[2x".parse::<VirtualAlphabet>().is_err());
    }

    #[test]
    fn virtual_constructors() {
        let v = VirtualAlphabet::new(x2(), d_alphabet().sum(&b_alphabet(1)));
        assert_eq!(v.minus.len(), 4);
        assert!(VirtualAlphabet::zero().plus.is_empty());
        let w = VirtualAlphabet::new(
            Alphabet::var(Var::x()),
            b_alphabet(2).sum(&Alphabet::single(Letter::scaled(2, Var::x()))),
        );
        assert_eq!(w.to_string(), "x - b1 - b2 - [2x]");
        assert_eq!(w.negated().negated(), w);
    }
}
