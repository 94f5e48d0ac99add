use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A polynomial variable: a lowercase family letter with an optional positive index,
/// e.g. `x`, `x1`, `b12`, `z`.
///
/// Variables are compared by a fixed global order: the `x` family first, `z` last and
/// every other family alphabetically in between; within a family the unindexed variable
/// precedes `1 < 2 < ...`. This gives `x < x1 < x2 < a1 < b1 < b2 < y1 < z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var {
    family: u8,
    index: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid variable name `{0}`")]
pub struct VarParseError(pub String);

impl Var {
    pub fn new(family: char, index: u32) -> Self {
        assert!(family.is_ascii_lowercase(), "variable family must be a-z");
        Var {
            family: family as u8,
            index,
        }
    }

    pub fn plain(family: char) -> Self {
        Var::new(family, 0)
    }

    pub fn family(&self) -> char {
        self.family as char
    }

    /// `0` for an unindexed variable.
    pub fn index(&self) -> u32 {
        self.index
    }

    fn rank(&self) -> u8 {
        match self.family {
            b'x' => 0,
            b'z' => 27,
            f => 1 + (f - b'a'),
        }
    }

    // Named constructors for the families used throughout the crate.
    pub fn x() -> Self {
        Var::plain('x')
    }
    pub fn xi(i: u32) -> Self {
        Var::new('x', i)
    }
    pub fn a(i: u32) -> Self {
        Var::new('a', i)
    }
    pub fn b(i: u32) -> Self {
        Var::new('b', i)
    }
    pub fn y(i: u32) -> Self {
        Var::new('y', i)
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank(), self.index).cmp(&(other.rank(), other.index))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.family as char)
        } else {
            write!(f, "{}{}", self.family as char, self.index)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Var {
    type Err = VarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let family = chars
            .next()
            .filter(|c| c.is_ascii_lowercase())
            .ok_or_else(|| VarParseError(s.to_string()))?;
        let rest = chars.as_str();
        if rest.is_empty() {
            return Ok(Var::plain(family));
        }
        match rest.parse::<u32>() {
            Ok(i) if i > 0 && !rest.starts_with('0') => Ok(Var::new(family, i)),
            _ => Err(VarParseError(s.to_string())),
        }
    }
}
