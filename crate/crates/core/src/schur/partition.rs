use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts {0:?} are not weakly increasing")]
    NotIncreasing(Vec<u32>),
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<u32>),
    #[error("cannot parse partition `{0}`")]
    Parse(String),
}

/// An integer partition.
///
/// Written and parsed in weakly increasing order (`1,3,3`), stored weakly decreasing
/// without zero parts. Partitions are ordered by weight, then lexicographically on the
/// increasing sequence of parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(SmallVec<[u32; 4]>);

/// The `(m, n)`-hook: `m` rows of unbounded length plus `n` columns of unbounded height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HookSpec {
    pub m: usize,
    pub n: u32,
}

impl HookSpec {
    pub fn new(m: usize, n: u32) -> Self {
        HookSpec { m, n }
    }
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn from_increasing(parts: &[u32]) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(PartitionError::NotIncreasing(parts.to_vec()));
        }
        Ok(Partition(
            parts.iter().rev().copied().filter(|&p| p > 0).collect(),
        ))
    }

    pub fn from_decreasing(parts: &[u32]) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts.to_vec()));
        }
        Ok(Partition(
            parts.iter().copied().filter(|&p| p > 0).collect(),
        ))
    }

    /// Sorts arbitrary nonnegative parts.
    pub fn from_multiset(parts: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 4]> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// `(width^rows)`.
    pub fn rectangle(rows: usize, width: u32) -> Self {
        if width == 0 {
            return Partition::empty();
        }
        Partition(std::iter::repeat_n(width, rows).collect())
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn increasing(&self) -> Vec<u32> {
        self.0.iter().rev().copied().collect()
    }

    /// The `k`-th largest part (0-based), zero past the end.
    pub fn part(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        Partition(
            (1..=self.largest())
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn in_hook(&self, h: HookSpec) -> bool {
        self.part(h.m) <= h.n
    }

    /// Adds `k` to each of the first `rows` parts, padding with zeros.
    pub fn add_to_rows(&self, rows: usize, k: u32) -> Partition {
        let n = rows.max(self.len());
        Partition(
            (0..n)
                .map(|i| self.part(i) + if i < rows { k } else { 0 })
                .filter(|&p| p > 0)
                .collect(),
        )
    }

    /// All partitions contained in `(width^rows)`, in increasing order.
    pub fn within_rectangle(rows: usize, width: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(rows);
        fn rec(rows: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.iter().copied().filter(|&p| p > 0).collect()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=cap {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, width, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of `weight` with at most `max_len` parts, in increasing order.
    pub fn of_weight(weight: u32, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rest: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.iter().copied().collect()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        rec(weight, weight, max_len, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Compact form `133`, or comma separated `6,10` when some part exceeds 9.
    pub fn compact(&self) -> String {
        let inc = self.increasing();
        if inc.iter().all(|&p| p < 10) {
            inc.iter().map(u32::to_string).collect()
        } else {
            inc.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
    }
}

/// Membership of `i` in the `(m, n)`-hook.
pub fn hook_contains(i: &Partition, h: HookSpec) -> bool {
    i.in_hook(h)
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inc: Vec<String> = self.increasing().iter().map(u32::to_string).collect();
        write!(f, "{}", inc.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `1,3,3`, the compact `133` (one digit per part), or an empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        let bad = || PartitionError::Parse(s.to_string());
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Partition::from_increasing(&parts)
    }
}
