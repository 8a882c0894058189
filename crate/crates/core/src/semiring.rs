//! Exact scalars and finite-support distributions.
//!
//! Two commutative zero-sum-free semirings are supported: the non-negative
//! rationals ([`Rational`], arbitrary precision) and the Boolean algebra
//! ([`Boolean`], `+` is OR and `*` is AND). Both are semifields, so the
//! conditional compositions in [`crate::simpdist`] can divide by nonzero
//! marginals in either kind.
//!
//! A [`Dist`] stores only its nonzero weights. Its outcome type is generic;
//! outcomes in `Z_d`, `Z_d x Z_d` and `Z_d^n` are represented by `u32`,
//! `(u32, u32)` and `Vec<u32>` respectively (see [`ZdElement`]).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which semiring a value or distribution lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rational,
    Boolean,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Rational => f.write_str("rational"),
            Kind::Boolean => f.write_str("boolean"),
        }
    }
}

/// A commutative, zero-sum-free semifield.
pub trait Semiring: Clone + fmt::Debug + fmt::Display + Eq + Ord + Hash + Send + Sync + 'static {
    const KIND: Kind;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    /// Division by a nonzero element.
    ///
    /// Panics if `other` is zero.
    fn div(&self, other: &Self) -> Self;

    /// The element `num / den`. In the Boolean kind this is `num != 0`.
    fn ratio(num: u64, den: u64) -> Self;

    /// The support projection onto the Boolean algebra: 1 iff nonzero.
    fn project(&self) -> Boolean {
        Boolean(!self.is_zero())
    }

    fn as_rational(&self) -> Option<&Rational> {
        None
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }
}

/// An exact non-negative rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`. Fails on a zero denominator or a negative value.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidScalar(format!("{num}/{den}")));
        }
        Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidScalar(value.to_string()));
        }
        Ok(Rational(value))
    }

    pub fn from_integer(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn half() -> Self {
        Self::ratio(1, 2)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    /// `self - other`, or `None` if the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let diff = &self.0 - &other.0;
        (!diff.is_negative()).then_some(Rational(diff))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidScalar(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Rational::from_big(BigRational::new(num, den)).map_err(|_| bad())
    }
}

impl Semiring for Rational {
    const KIND: Kind = Kind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        Rational(&self.0 / &other.0)
    }

    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }
}

/// An element of the Boolean algebra `{0, 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boolean(pub bool);

impl fmt::Debug for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Semiring for Boolean {
    const KIND: Kind = Kind::Boolean;

    fn zero() -> Self {
        Boolean(false)
    }

    fn one() -> Self {
        Boolean(true)
    }

    fn add(&self, other: &Self) -> Self {
        Boolean(self.0 || other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Boolean(self.0 && other.0)
    }

    fn is_zero(&self) -> bool {
        !self.0
    }

    fn div(&self, other: &Self) -> Self {
        assert!(other.0, "division by zero");
        *self
    }

    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Boolean(num != 0)
    }
}

/// Outcomes that form the group `Z_d` or a product of copies of it.
pub trait ZdElement: Clone + Ord + fmt::Debug {
    fn add_mod(&self, other: &Self, d: u32) -> Self;
    fn neg_mod(&self, d: u32) -> Self;
}

impl ZdElement for u32 {
    fn add_mod(&self, other: &Self, d: u32) -> Self {
        (self + other) % d
    }

    fn neg_mod(&self, d: u32) -> Self {
        (d - self % d) % d
    }
}

impl ZdElement for (u32, u32) {
    fn add_mod(&self, other: &Self, d: u32) -> Self {
        (self.0.add_mod(&other.0, d), self.1.add_mod(&other.1, d))
    }

    fn neg_mod(&self, d: u32) -> Self {
        (self.0.neg_mod(d), self.1.neg_mod(d))
    }
}

impl ZdElement for Vec<u32> {
    fn add_mod(&self, other: &Self, d: u32) -> Self {
        assert_eq!(self.len(), other.len(), "tuple lengths differ");
        self.iter().zip(other).map(|(a, b)| a.add_mod(b, d)).collect()
    }

    fn neg_mod(&self, d: u32) -> Self {
        self.iter().map(|a| a.neg_mod(d)).collect()
    }
}

/// A normalized finite-support distribution with weights in `S`.
///
/// Only nonzero weights are stored, so two distributions are equal exactly
/// when their supports and weights agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dist<S, O: Ord> {
    weights: BTreeMap<O, S>,
}

impl<S: Semiring, O: Ord + Clone + fmt::Debug> fmt::Debug for Dist<S, O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.weights.iter().map(|(o, w)| (o, w.to_string()))).finish()
    }
}

impl<S: Semiring, O: Ord + Clone> Dist<S, O> {
    /// The point mass at `outcome`.
    pub fn delta(outcome: O) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(outcome, S::one());
        Dist { weights }
    }

    /// Builds a distribution from (outcome, weight) pairs. Repeated outcomes
    /// are summed and zero weights dropped; the result must be normalized.
    pub fn from_weights<I: IntoIterator<Item = (O, S)>>(items: I) -> Result<Self> {
        let dist = Self::from_weights_unchecked(items);
        if !dist.is_normalized() {
            return Err(Error::NotNormalized(format!("total weight {}", dist.total())));
        }
        Ok(dist)
    }

    pub(crate) fn from_weights_unchecked<I: IntoIterator<Item = (O, S)>>(items: I) -> Self {
        let mut weights: BTreeMap<O, S> = BTreeMap::new();
        for (o, w) in items {
            if w.is_zero() {
                continue;
            }
            weights
                .entry(o)
                .and_modify(|acc| *acc = acc.add(&w))
                .or_insert(w);
        }
        Dist { weights }
    }

    /// The uniform distribution over the given (distinct) outcomes.
    pub fn uniform<I: IntoIterator<Item = O>>(outcomes: I) -> Result<Self> {
        let outcomes: Vec<O> = outcomes.into_iter().collect();
        let n = outcomes.len() as u64;
        if n == 0 {
            return Err(Error::NotNormalized("empty outcome set".into()));
        }
        Self::from_weights(outcomes.into_iter().map(|o| (o, S::ratio(1, n))))
    }

    pub fn total(&self) -> S {
        S::sum(self.weights.values())
    }

    fn is_normalized(&self) -> bool {
        self.total() == S::one()
    }

    /// Weight of `outcome` (zero when outside the support).
    pub fn weight(&self, outcome: &O) -> S {
        self.weights.get(outcome).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&O, &S)> {
        self.weights.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &O> {
        self.weights.keys()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// The outcome if this is a point mass.
    pub fn as_delta(&self) -> Option<&O> {
        if self.weights.len() == 1 {
            self.weights.keys().next()
        } else {
            None
        }
    }

    /// `result(y) = sum of p(x) over x with f(x) = y`.
    pub fn pushforward<P: Ord + Clone, F: Fn(&O) -> P>(&self, f: F) -> Dist<S, P> {
        Dist::from_weights_unchecked(self.weights.iter().map(|(o, w)| (f(o), w.clone())))
    }

    /// Convolution with respect to the binary operation `op`.
    pub fn convolve_with<F: Fn(&O, &O) -> O>(&self, other: &Self, op: F) -> Self {
        Dist::from_weights_unchecked(self.weights.iter().flat_map(|(x, wx)| {
            other.weights.iter().map({
                let op = &op;
                move |(y, wy)| (op(x, y), wx.mul(wy))
            })
        }))
    }

    /// Entrywise support projection into the Boolean algebra.
    pub fn project(&self) -> Dist<Boolean, O> {
        Dist::from_weights_unchecked(self.weights.iter().map(|(o, w)| (o.clone(), w.project())))
    }

    /// Mixture `sum_i w_i p_i`; weights must sum to one.
    pub fn mixture<'a, I>(components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a S, &'a Self)>,
        O: 'a,
    {
        let mut items = Vec::new();
        let mut total = S::zero();
        for (w, p) in components {
            total = total.add(w);
            items.extend(p.weights.iter().map(|(o, x)| (o.clone(), w.mul(x))));
        }
        if total != S::one() {
            return Err(Error::NotNormalized(format!("mixture weights sum to {total}")));
        }
        Self::from_weights(items)
    }
}

impl<S: Semiring, O: ZdElement> Dist<S, O> {
    /// Group convolution over `Z_d` (componentwise for tuples).
    pub fn convolve(&self, other: &Self, d: u32) -> Self {
        self.convolve_with(other, |x, y| x.add_mod(y, d))
    }
}

/// All elements of `Z_d^n` in lexicographic order.
pub fn zd_tuples(d: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}
