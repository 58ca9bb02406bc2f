//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables are indexed by `u32`. Index 0 is reserved for the distinguished
//! variable `q`; user variables `x1, x2, ...` start at index 1.
//!
//! Every value is kept in canonical form: no zero coefficients are stored and
//! no monomial carries a zero exponent, so structural equality is polynomial
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

/// Variable index reserved for `q`.
pub const Q: u32 = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable {0} has no assigned value")]
    MissingVariable(String),
    #[error("invalid variable range: lo must be at least 1, got {0}")]
    InvalidRange(u32),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

fn var_name(v: u32) -> String {
    if v == Q {
        "q".to_string()
    } else {
        format!("x{v}")
    }
}

/// A product of variables. Stored densely by variable index with trailing
/// zeros trimmed; ordering is graded lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: u32) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: u32, e: u32) -> Self {
        let mut m = Self::one();
        if e > 0 {
            m.exps.resize(v as usize + 1, 0);
            m.exps[v as usize] = u16::try_from(e).expect("exponent overflow");
            m.degree = e;
        }
        m
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables
    /// accumulate and zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        pairs
            .into_iter()
            .fold(Self::one(), |acc, (v, e)| acc.mul(&Self::var_pow(v, e)))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.exps.get(v as usize).copied().unwrap_or(0) as u32
    }

    /// Nonzero `(variable, exponent)` pairs in increasing variable order.
    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| (v as u32, e as u32))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (slot, &e) in exps.iter_mut().zip(short.exps.iter()) {
            *slot = slot.checked_add(e).expect("exponent overflow");
        }
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Trailing zeros are trimmed, so slice order equals zero-padded lex order.
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.as_slice().cmp(other.exps.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let s = self
            .exponents()
            .map(|(v, e)| {
                if e == 1 {
                    var_name(v)
                } else {
                    format!("{}^{e}", var_name(v))
                }
            })
            .join("*");
        f.write_str(&s)
    }
}

/// A contiguous run of user variables `x_lo, ..., x_hi`; empty when `hi < lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarRange {
    lo: u32,
    hi: u32,
}

impl VarRange {
    pub fn new(lo: u32, hi: u32) -> Result<Self, PolyError> {
        if lo == 0 {
            return Err(PolyError::InvalidRange(lo));
        }
        Ok(Self { lo, hi })
    }

    /// The range `x_1, ..., x_count`.
    pub fn first(count: u32) -> Self {
        Self { lo: 1, hi: count }
    }

    pub fn empty() -> Self {
        Self { lo: 1, hi: 0 }
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + Clone {
        self.lo..=self.hi
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c.into(), Monomial::one())
    }

    pub fn var(v: u32) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    /// The user variable `x_i`.
    pub fn x(i: u32) -> Self {
        assert!(i >= 1, "x0 is reserved for q");
        Self::var(i)
    }

    pub fn q() -> Self {
        Self::var(Q)
    }

    pub fn q_pow(e: u32) -> Self {
        Self::from_monomial(Monomial::var_pow(Q, e))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(BigInt::one(), m)
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Sums `(coefficient, monomial)` pairs into canonical form.
    pub fn from_terms<I: IntoIterator<Item = (BigInt, Monomial)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
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
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Highest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.variables().into_iter().next_back()
    }

    pub fn variables(&self) -> std::collections::BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().map(|(v, _)| v))
            .collect()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies every term by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k.clone()))
                .collect(),
        }
    }

    /// Replaces each variable by the assigned polynomial.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<u32, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let mut powers: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for (v, e) in m.exponents() {
                let value = assignment
                    .get(&v)
                    .ok_or_else(|| PolyError::MissingVariable(var_name(v)))?;
                let pw = powers.entry((v, e)).or_insert_with(|| value.pow(e));
                acc = &acc * &*pw;
            }
            out += acc;
        }
        Ok(out)
    }

    /// Evaluates at an integer point; every variable of `self` must be assigned.
    pub fn eval(&self, point: &BTreeMap<u32, BigInt>) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exponents() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| PolyError::MissingVariable(var_name(v)))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluates with every variable set to 1, i.e. the coefficient sum.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficients of a polynomial in `q` alone, lowest degree first.
    /// Returns `None` if any other variable occurs.
    pub fn q_coefficients(&self) -> Option<Vec<BigInt>> {
        let deg = self.degree().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.exponents().any(|(v, _)| v != Q) {
                return None;
            }
            out[m.exponent(Q) as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        Some(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
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

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Parses the display format, e.g. `x1*x2*x3 + 2*x2^2 - 1` or `1 + q + 2*q^2`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| PolyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !current.ends_with('^') {
                if i == 0 {
                    negative = ch == '-';
                    continue;
                }
                if current.is_empty() {
                    return Err(fail("dangling sign"));
                }
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(fail("dangling sign"));
        }
        pieces.push((negative, current));

        let mut out = Polynomial::zero();
        for (neg, piece) in pieces {
            let mut coeff = BigInt::one();
            let mut mono = Monomial::one();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(fail("empty factor"));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|_| fail("bad integer"))?;
                    continue;
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| fail("bad exponent"))?),
                    None => (factor, 1),
                };
                let v = if base == "q" {
                    Q
                } else if let Some(idx) = base.strip_prefix('x') {
                    let v = idx.parse::<u32>().map_err(|_| fail("bad variable index"))?;
                    if v == 0 {
                        return Err(fail("x0 is reserved"));
                    }
                    v
                } else {
                    return Err(fail("unknown factor"));
                };
                mono = mono.mul(&Monomial::var_pow(v, exp));
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

/// Complete homogeneous symmetric polynomial `h_d` in the given variables.
///
/// `h_0 = 1` for every range, `h_d = 0` for `d < 0`, and `h_d = 0` for `d > 0`
/// over an empty range.
pub fn h_poly(d: i64, vars: VarRange) -> Polynomial {
    if d < 0 {
        return Polynomial::zero();
    }
    if d == 0 {
        return Polynomial::one();
    }
    Polynomial::from_terms(
        vars.vars()
            .combinations_with_replacement(d as usize)
            .map(|vs| {
                (
                    BigInt::one(),
                    Monomial::from_pairs(vs.into_iter().map(|v| (v, 1))),
                )
            }),
    )
}

/// Elementary symmetric polynomial `e_d` in the given variables.
pub fn e_poly(d: i64, vars: VarRange) -> Polynomial {
    if d < 0 {
        return Polynomial::zero();
    }
    if d == 0 {
        return Polynomial::one();
    }
    Polynomial::from_terms(vars.vars().combinations(d as usize).map(|vs| {
        (
            BigInt::one(),
            Monomial::from_pairs(vs.into_iter().map(|v| (v, 1))),
        )
    }))
}

/// The assignment `x_i -> q^(i-1)` for `i = 1..=count`.
pub fn q_specialization(count: u32) -> BTreeMap<u32, Polynomial> {
    (1..=count).map(|i| (i, Polynomial::q_pow(i - 1))).collect()
}

/// Gaussian binomial coefficient `[n choose k]_q` as a polynomial in `q`,
/// obtained as `h_k(1, q, ..., q^(n-k))`.
pub fn qbinom(n: u32, k: i64) -> Polynomial {
    if k < 0 || k > n as i64 {
        return Polynomial::zero();
    }
    let width = n - k as u32 + 1;
    h_poly(k, VarRange::first(width))
        .substitute(&q_specialization(width))
        .expect("specialization covers every variable of the range")
}

/// `sum_{i=0}^{d} (-1)^i e_i h_{d-i}` over `x_1..x_nvars`; zero by Newton's identity.
pub fn newton_residual(d: u32, nvars: u32) -> Polynomial {
    let vars = VarRange::first(nvars);
    (0..=d as i64)
        .map(|i| {
            let t = &e_poly(i, vars) * &h_poly(d as i64 - i, vars);
            if i % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// Integer binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn range(lo: u32, hi: u32) -> VarRange {
        VarRange::new(lo, hi).unwrap()
    }

    #[test]
    fn add_examples() {
        let x1 = Polynomial::x(1);
        assert_eq!(&Polynomial::zero() + &x1, x1);
        assert!((&x1 + &(-&x1)).is_zero());
        assert_eq!(p("x1 + x2") + p("x2"), p("x1 + 2*x2"));
    }

    #[test]
    fn mul_examples() {
        let a = p("x1 + x2");
        assert_eq!(&Polynomial::one() * &a, a);
        assert_eq!(&a * &p("x1 - x2"), p("x1^2 - x2^2"));
        assert!((&Polynomial::zero() * &a).is_zero());
    }

    #[test]
    fn display_format() {
        let v = p("2*x2^2 + x1*x2*x3 - 1");
        assert_eq!(v.to_string(), "x1*x2*x3 + 2*x2^2 - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!((-Polynomial::x(3)).to_string(), "-x3");
        assert_eq!(qbinom(4, 2).to_string(), "q^4 + q^3 + 2*q^2 + q + 1");
        // graded lex with lower index first
        assert_eq!(p("x2^2 + x1*x2 + x1^2").to_string(), "x1^2 + x1*x2 + x2^2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<Polynomial>().is_err());
        assert!("x1 +".parse::<Polynomial>().is_err());
        assert!("y2".parse::<Polynomial>().is_err());
        assert!("x0".parse::<Polynomial>().is_err());
    }

    #[test]
    fn h_poly_examples() {
        assert_eq!(h_poly(0, VarRange::empty()), Polynomial::one());
        assert!(h_poly(3, VarRange::empty()).is_zero());
        assert_eq!(h_poly(1, range(2, 4)), p("x2 + x3 + x4"));
        assert_eq!(h_poly(2, range(2, 2)), p("x2^2"));
        assert!(h_poly(-1, range(1, 3)).is_zero());
    }

    #[test]
    fn e_poly_examples() {
        assert_eq!(e_poly(0, range(1, 5)), Polynomial::one());
        assert_eq!(e_poly(0, VarRange::empty()), Polynomial::one());
        assert_eq!(e_poly(2, range(1, 3)), p("x1*x2 + x1*x3 + x2*x3"));
        assert!(e_poly(4, range(1, 3)).is_zero());
    }

    #[test]
    fn var_range_rejects_q() {
        assert_eq!(VarRange::new(0, 3), Err(PolyError::InvalidRange(0)));
    }

    #[test]
    fn substitute_examples() {
        let a: BTreeMap<u32, Polynomial> = [(1, Polynomial::one()), (2, Polynomial::q())]
            .into_iter()
            .collect();
        assert_eq!(p("x1 + x2").substitute(&a).unwrap(), p("1 + q"));
        assert_eq!(
            h_poly(1, range(1, 2))
                .substitute(&q_specialization(2))
                .unwrap(),
            p("1 + q")
        );
        let ones: BTreeMap<u32, Polynomial> = (1..=3).map(|i| (i, Polynomial::one())).collect();
        assert_eq!(
            e_poly(2, range(1, 3)).substitute(&ones).unwrap(),
            Polynomial::constant(3)
        );
    }

    #[test]
    fn substitute_missing_variable() {
        let a: BTreeMap<u32, Polynomial> = [(1, Polynomial::one())].into_iter().collect();
        assert_eq!(
            p("x1 + x2").substitute(&a),
            Err(PolyError::MissingVariable("x2".into()))
        );
    }

    /// Exact division of integer polynomials in q (lowest degree first).
    fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem = num.to_vec();
        let dl = den.len();
        assert_eq!(den[dl - 1].abs(), 1);
        let mut quot = vec![0; rem.len() + 1 - dl];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dl - 1] / den[dl - 1];
            quot[i] = c;
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
        assert!(rem.iter().all(|&r| r == 0), "division not exact");
        quot
    }

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// `1 - q^m` as a coefficient vector.
    fn one_minus_q_pow(m: usize) -> Vec<i64> {
        let mut v = vec![0; m + 1];
        v[0] = 1;
        v[m] -= 1;
        v
    }

    /// Product formula: prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i).
    fn qbinom_oracle(n: usize, k: usize) -> Vec<i64> {
        let mut num = vec![1];
        let mut den = vec![1];
        for i in 1..=k {
            num = poly_mul(&num, &one_minus_q_pow(n - k + i));
            den = poly_mul(&den, &one_minus_q_pow(i));
        }
        let mut q = div_exact(&num, &den);
        while q.len() > 1 && *q.last().unwrap() == 0 {
            q.pop();
        }
        q
    }

    fn coeffs(p: &Polynomial) -> Vec<i64> {
        p.q_coefficients()
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(5, 0), Polynomial::one());
        assert_eq!(qbinom(2, 1), p("1 + q"));
        assert_eq!(qbinom(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(qbinom(3, 4).is_zero());
        assert!(qbinom(3, -1).is_zero());
        assert_eq!(qbinom_oracle(2, 1), vec![1, 1]);
        assert_eq!(qbinom_oracle(4, 2), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn qbinom_matches_product_formula() {
        for n in 0..=8usize {
            for k in 0..=n {
                assert_eq!(
                    coeffs(&qbinom(n as u32, k as i64)),
                    qbinom_oracle(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn qbinom_at_one_is_binomial() {
        for n in 0..=8u32 {
            for k in 0..=n {
                assert_eq!(
                    qbinom(n, k as i64).eval_ones(),
                    binomial(n as i64, k as i64)
                );
            }
        }
    }

    #[test]
    fn e_specialization_matches_qbinom() {
        // e_k(1, q, ..., q^(n-1)) = q^C(k,2) [n choose k]
        for n in 0..=6u32 {
            for k in 0..=n {
                let lhs = e_poly(k as i64, VarRange::first(n))
                    .substitute(&q_specialization(n))
                    .unwrap();
                let rhs = &Polynomial::q_pow(k * k.saturating_sub(1) / 2) * &qbinom(n, k as i64);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn newton_examples() {
        assert!(newton_residual(1, 3).is_zero());
        assert!(newton_residual(4, 2).is_zero());
        assert!(newton_residual(2, 0).is_zero());
    }

    #[test]
    fn newton_sweep() {
        for d in 1..=6 {
            for v in 0..=6 {
                assert!(newton_residual(d, v).is_zero(), "d={d} v={v}");
            }
        }
    }

    #[test]
    fn symmetric_polys_count_terms() {
        for lo in 1..=3u32 {
            for hi in lo..lo + 5 {
                let r = range(lo, hi);
                let width = (hi - lo) as i64;
                for d in 0..=5i64 {
                    assert_eq!(h_poly(d, r).eval_ones(), binomial(width + d, d));
                    assert_eq!(e_poly(d, r).eval_ones(), binomial(width + 1, d));
                }
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-4i64..=4, 1u32..=3, 0u32..=2, 0u32..=2), 0..5).prop_map(|ts| {
            Polynomial::from_terms(ts.into_iter().map(|(c, v, e1, e2)| {
                (
                    BigInt::from(c),
                    Monomial::from_pairs([(v, e1), (v % 3 + 1, e2)]),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_form(a in arb_poly(), b in arb_poly()) {
            let prod = &a * &b;
            for (m, c) in prod.terms() {
                prop_assert!(!c.is_zero());
                prop_assert!(m.exponents().all(|(_, e)| e > 0));
            }
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<Polynomial>().unwrap(), a);
        }
    }
}
