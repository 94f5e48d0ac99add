use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::var::Var;

/// Exact multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms live in a map keyed by [`Monomial`] (graded-lex order), so two equal polynomials
/// have identical internal state. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(1, Monomial::var(v))
    }

    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Collects terms, summing duplicates and discarding zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// `c_0 + Σ c_v·v`, the polynomial of a linear form.
    pub fn linear<I: IntoIterator<Item = (Var, i64)>>(constant: i64, coeffs: I) -> Self {
        let mut p = MPoly::constant(constant);
        for (v, c) in coeffs {
            p.add_term(Monomial::var(v), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    /// The value of a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The polynomial coefficient of `v^k`, i.e. the part of `self` of degree exactly `k`
    /// in `v`, divided by `v^k`.
    pub fn coeff_in(&self, v: Var, k: u32) -> MPoly {
        MPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| (m.without(v), c.clone())),
        )
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c·m·p`
    fn add_scaled(&mut self, c: &BigInt, m: &Monomial, p: &MPoly) {
        for (pm, pc) in &p.terms {
            self.add_term(pm.mul(m), pc * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[vars]`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem.add_scaled(&-&qc, &qm, d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let mut powers: Vec<MPoly> = vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_scaled(c, &m.without(v), &powers[e]);
        }
        out
    }

    /// Evaluates at an integer point; variables missing from `point` are taken as zero.
    pub fn eval_at(&self, point: &dyn Fn(Var) -> BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                t *= num_traits::pow(point(v), e as usize);
            }
            acc += t;
        }
        acc
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let vars: Vec<Var> = {
            let mut s = self.vars();
            s.extend(other.vars());
            s.into_iter().collect()
        };
        if vars.len() <= PACK_SLOTS && self.degree() + other.degree() <= 255 {
            packed_mul(self, other, &vars)
        } else {
            let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    *acc.entry(ma.mul(mb)).or_default() += ca * cb;
                }
            }
            MPoly::from_terms(acc)
        }
    }
}

const PACK_SLOTS: usize = 16;

fn pack(m: &Monomial, vars: &[Var]) -> u128 {
    let mut key = 0u128;
    for &(v, e) in m.pairs() {
        let slot = vars.binary_search(&v).expect("variable in union");
        key |= (e as u128) << (8 * slot);
    }
    key
}

fn unpack(key: u128, vars: &[Var]) -> Monomial {
    Monomial::from_pairs(
        vars.iter()
            .enumerate()
            .map(|(slot, &v)| (v, ((key >> (8 * slot)) & 0xff) as u32)),
    )
}

fn max_bits(p: &MPoly) -> u64 {
    p.terms.values().map(|c| c.bits()).max().unwrap_or(0)
}

/// Product with monomials packed into 8-bit exponent slots of a `u128`; exponent sums
/// cannot carry because the total degree of the product is at most 255. Coefficients are
/// accumulated in `i128` whenever the worst-case sum provably fits.
fn packed_mul(a: &MPoly, b: &MPoly, vars: &[Var]) -> MPoly {
    let pa: Vec<(u128, &BigInt)> = a.terms.iter().map(|(m, c)| (pack(m, vars), c)).collect();
    let pb: Vec<(u128, &BigInt)> = b.terms.iter().map(|(m, c)| (pack(m, vars), c)).collect();
    let len_bits = 64 - (pa.len().min(pb.len()) as u64).leading_zeros() as u64;
    let cap = (pa.len() * pb.len()).min(1 << 20);
    if max_bits(a) + max_bits(b) + len_bits <= 126 {
        let sa: Vec<(u128, i128)> = pa.iter().map(|(k, c)| (*k, c.to_i128().unwrap())).collect();
        let sb: Vec<(u128, i128)> = pb.iter().map(|(k, c)| (*k, c.to_i128().unwrap())).collect();
        let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
        acc.reserve(cap);
        for &(ka, ca) in &sa {
            for &(kb, cb) in &sb {
                *acc.entry(ka + kb).or_insert(0) += ca * cb;
            }
        }
        MPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (unpack(k, vars), BigInt::from(c)))
                .collect(),
        }
    } else {
        let mut acc: FxHashMap<u128, BigInt> = FxHashMap::default();
        acc.reserve(cap);
        for &(ka, ca) in &pa {
            for &(kb, cb) in &pb {
                *acc.entry(ka + kb).or_default() += ca * cb;
            }
        }
        MPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (unpack(k, vars), c))
                .collect(),
        }
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

impl From<BigInt> for MPoly {
    fn from(c: BigInt) -> Self {
        MPoly::constant(c)
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big += small;
        big
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        self.mul_impl(&rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        let mut acc = MPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for MPoly {
    fn product<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        let mut acc = MPoly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

/// Canonical rendering: terms in descending graded-lex order, e.g. `x1^2 + 2*x1*x2 - b1`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}
