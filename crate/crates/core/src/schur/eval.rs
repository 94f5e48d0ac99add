use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, VirtualAlphabet};
use crate::poly::{det_fraction_free, MPoly};

use super::partition::{HookSpec, Partition};

/// How [`SchurEvaluator::schur`] evaluates partition-indexed functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Always expand the determinant of complete functions.
    #[default]
    Determinant,
    /// Return zero outside the `(|A|, |B|)`-hook and split off the resultant when the
    /// partition contains the full rectangle; fall back to the determinant otherwise.
    Structural,
}

/// Evaluates complete and Schur functions of one fixed virtual alphabet, caching the
/// complete functions and every Schur value computed so far.
pub struct SchurEvaluator {
    alphabet: VirtualAlphabet,
    plus: Vec<MPoly>,
    minus: Vec<MPoly>,
    series: Vec<MPoly>,
    strategy: Strategy,
    cache: FxHashMap<Partition, MPoly>,
    plus_part: Option<Box<SchurEvaluator>>,
    minus_part: Option<Box<SchurEvaluator>>,
    resultant: Option<MPoly>,
}

fn letters(a: &Alphabet) -> Vec<MPoly> {
    a.letters().iter().map(|l| l.to_mpoly()).collect()
}

impl SchurEvaluator {
    pub fn new(v: &VirtualAlphabet) -> Self {
        SchurEvaluator::with_strategy(v, Strategy::Determinant)
    }

    pub fn structural(v: &VirtualAlphabet) -> Self {
        SchurEvaluator::with_strategy(v, Strategy::Structural)
    }

    pub fn with_strategy(v: &VirtualAlphabet, strategy: Strategy) -> Self {
        SchurEvaluator {
            alphabet: v.clone(),
            plus: letters(&v.plus),
            minus: letters(&v.minus),
            series: vec![MPoly::one()],
            strategy,
            cache: FxHashMap::default(),
            plus_part: None,
            minus_part: None,
            resultant: None,
        }
    }

    pub fn alphabet(&self) -> &VirtualAlphabet {
        &self.alphabet
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn extend_series(&mut self, degree: usize) {
        let d = degree.max(2 * (self.series.len() - 1));
        let mut s = vec![MPoly::zero(); d + 1];
        s[0] = MPoly::one();
        for a in &self.plus {
            for i in 1..=d {
                let t = a * &s[i - 1];
                s[i] += &t;
            }
        }
        for b in &self.minus {
            for i in (1..=d).rev() {
                let t = b * &s[i - 1];
                s[i] -= &t;
            }
        }
        self.series = s;
    }

    /// `S_i` of the alphabet: zero for negative `i`, one for `i = 0`.
    pub fn complete(&mut self, i: i64) -> MPoly {
        if i < 0 {
            return MPoly::zero();
        }
        let i = i as usize;
        if i >= self.series.len() {
            self.extend_series(i);
        }
        self.series[i].clone()
    }

    /// `det[S_{i_p + p - q}]` for an arbitrary integer sequence, always by expansion.
    pub fn schur_seq(&mut self, seq: &[i64]) -> MPoly {
        let k = seq.len();
        if let Some(max) = seq.iter().map(|&i| i + k as i64).max() {
            if max >= 0 && max as usize >= self.series.len() {
                self.extend_series(max as usize);
            }
        }
        let m: Vec<Vec<MPoly>> = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| self.complete(seq[p] + p as i64 - q as i64))
                    .collect()
            })
            .collect();
        det_fraction_free(&m)
    }

    /// Schur function of a partition, using the configured [`Strategy`].
    pub fn schur(&mut self, p: &Partition) -> MPoly {
        if let Some(v) = self.cache.get(p) {
            return v.clone();
        }
        let v = match self.strategy {
            Strategy::Determinant => self.determinant(p),
            Strategy::Structural => self.structural_value(p),
        };
        self.cache.insert(p.clone(), v.clone());
        v
    }

    /// Schur function of an arbitrary sequence; under [`Strategy::Structural`] the
    /// sequence is straightened first.
    pub fn schur_of(&mut self, seq: &[i64]) -> MPoly {
        match self.strategy {
            Strategy::Determinant => self.schur_seq(seq),
            Strategy::Structural => match straighten(seq) {
                None => MPoly::zero(),
                Some((sign, p)) => {
                    let v = self.schur(&p);
                    if sign < 0 {
                        -v
                    } else {
                        v
                    }
                }
            },
        }
    }

    fn determinant(&mut self, p: &Partition) -> MPoly {
        let seq: Vec<i64> = p.increasing().into_iter().map(i64::from).collect();
        self.schur_seq(&seq)
    }

    fn structural_value(&mut self, p: &Partition) -> MPoly {
        let (m, n) = (self.plus.len(), self.minus.len());
        if !p.in_hook(HookSpec::new(m, n as u32)) {
            return MPoly::zero();
        }
        if m == 0 || n == 0 || p.part(m - 1) < n as u32 {
            return self.determinant(p);
        }
        let top: Vec<u32> = p.parts()[..m].iter().map(|&x| x - n as u32).collect();
        let top = Partition::from_decreasing(&top).expect("rows stay ordered");
        let bottom = Partition::from_decreasing(&p.parts()[m..]).expect("tail of a partition");
        let strategy = self.strategy;
        let plus = self.plus_part.get_or_insert_with(|| {
            Box::new(SchurEvaluator::with_strategy(
                &VirtualAlphabet::positive(self.alphabet.plus.clone()),
                strategy,
            ))
        });
        let a = plus.schur(&top);
        if a.is_zero() {
            return a;
        }
        let minus = self.minus_part.get_or_insert_with(|| {
            Box::new(SchurEvaluator::with_strategy(
                &VirtualAlphabet::negative(self.alphabet.minus.clone()),
                strategy,
            ))
        });
        let b = minus.schur(&bottom);
        let r = self
            .resultant
            .get_or_insert_with(|| resultant(&self.alphabet.plus, &self.alphabet.minus));
        &(&a * r) * &b
    }

    /// Skew Schur function `det[S_{λ_p - μ_q - p + q}]`, with `λ`, `μ` read in
    /// decreasing order and `μ` padded with zeros.
    pub fn skew(&mut self, outer: &Partition, inner: &Partition) -> MPoly {
        if !outer.contains(inner) {
            return MPoly::zero();
        }
        let k = outer.len();
        let m: Vec<Vec<MPoly>> = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| {
                        self.complete(
                            outer.part(p) as i64 - inner.part(q) as i64 - p as i64 + q as i64,
                        )
                    })
                    .collect()
            })
            .collect();
        det_fraction_free(&m)
    }
}

/// Reorders `det[S_{i_p + p - q}]` into a partition determinant: returns the sign and
/// partition, or `None` when the determinant vanishes identically.
pub fn straighten(seq: &[i64]) -> Option<(i32, Partition)> {
    let k = seq.len();
    let mut beta: Vec<i64> = seq.iter().enumerate().map(|(p, &i)| i + p as i64).collect();
    let mut sign = 1;
    for i in 1..k {
        let mut j = i;
        while j > 0 && beta[j - 1] > beta[j] {
            beta.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if beta.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let parts: Vec<i64> = beta
        .iter()
        .enumerate()
        .map(|(p, &b)| b - p as i64)
        .collect();
    if parts.first().is_some_and(|&x| x < 0) {
        return None;
    }
    let parts: Vec<u32> = parts.into_iter().map(|x| x as u32).collect();
    Some((
        sign,
        Partition::from_increasing(&parts).expect("sorted by construction"),
    ))
}

/// `∏_{a ∈ A, b ∈ B} (a - b)`.
pub fn resultant(a: &Alphabet, b: &Alphabet) -> MPoly {
    let bs = letters(b);
    let mut acc = MPoly::one();
    for la in a.letters() {
        let pa = la.to_mpoly();
        for pb in &bs {
            acc = &acc * &(&pa - pb);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straightening_rules() {
        assert_eq!(straighten(&[1, 3, 3]), Some((1, "1,3,3".parse().unwrap())));
        assert_eq!(straighten(&[1, -1]), Some((-1, Partition::empty())));
        assert_eq!(straighten(&[2, 1]), None);
        assert_eq!(straighten(&[3, 1]), Some((-1, "2,2".parse().unwrap())));
        assert_eq!(straighten(&[-1, 4]), None);
        assert_eq!(straighten(&[]), Some((1, Partition::empty())));
    }

    #[test]
    fn straightening_matches_determinant() {
        let v: VirtualAlphabet = "x1 + x2 + x3 - b1".parse().unwrap();
        let mut det = SchurEvaluator::new(&v);
        let mut st = SchurEvaluator::structural(&v);
        for seq in [
            [3i64, 1, 0],
            [0, 2, -1],
            [1, 1, 5],
            [-2, 3, 3],
            [4, 0, 0],
            [2, 2, 0],
        ] {
            assert_eq!(det.schur_seq(&seq), st.schur_of(&seq), "{seq:?}");
        }
    }
}
