//! Eventually constant sequences: the exact model for elements of `c0`, `l1`
//! and `l∞`.
//!
//! A sequence is stored as a finite prefix (entries at indices `1..=len`) and
//! a tail value repeated at every later index. Indices are 1-based. The
//! canonical form requires the last prefix entry to differ from the tail, so
//! structural equality is mathematical equality.
//!
//! A zero tail means the sequence is finitely supported, which places it in
//! both `c0` and `l1`. A nonzero tail places it in `l∞ \ c0`; `l∞` is read as
//! the bidual of `c0` (the dual of `l1`), and the duality pairing is the
//! finite sum over the support of whichever argument is finitely supported.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EvConstSeq<S> {
    prefix: Vec<S>,
    tail: S,
}

impl<S: Scalar> EvConstSeq<S> {
    /// Builds the canonical sequence whose entries are `prefix` followed by
    /// `tail` forever. Trailing prefix entries equal to `tail` are absorbed.
    pub fn new(mut prefix: Vec<S>, tail: S) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        EvConstSeq { prefix, tail }
    }

    /// Finitely supported sequence with the given leading entries.
    pub fn finite(prefix: Vec<S>) -> Self {
        Self::new(prefix, S::zero())
    }

    pub fn zero() -> Self {
        EvConstSeq { prefix: Vec::new(), tail: S::zero() }
    }

    /// The constant sequence `(c, c, c, ...)`; `constant(1)` is `e`.
    pub fn constant(c: S) -> Self {
        EvConstSeq { prefix: Vec::new(), tail: c }
    }

    /// Standard unit vector with a 1 at index `k` (1-based).
    ///
    /// Panics if `k == 0`.
    pub fn unit(k: usize) -> Self {
        assert!(k >= 1, "sequence indices are 1-based");
        let mut prefix = vec![S::zero(); k];
        prefix[k - 1] = S::one();
        EvConstSeq { prefix, tail: S::zero() }
    }

    pub fn prefix(&self) -> &[S] {
        &self.prefix
    }

    pub fn tail(&self) -> &S {
        &self.tail
    }

    /// Number of explicitly stored entries. For a finitely supported
    /// sequence this is the index of the last nonzero entry.
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_zero()
    }

    /// True iff the tail is zero, i.e. the sequence lies in `c0` and `l1`.
    pub fn is_finitely_supported(&self) -> bool {
        self.tail.is_zero()
    }

    /// Entry at 1-based index `i`. Panics if `i == 0`.
    pub fn entry(&self, i: usize) -> S {
        assert!(i >= 1, "sequence indices are 1-based");
        self.prefix.get(i - 1).cloned().unwrap_or_else(|| self.tail.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(
            self.prefix.iter().map(|a| c.clone() * a.clone()).collect(),
            c.clone() * self.tail.clone(),
        )
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        let n = self.len().max(other.len());
        let prefix = (1..=n).map(|i| f(self.entry(i), other.entry(i))).collect();
        Self::new(prefix, f(self.tail.clone(), other.tail.clone()))
    }

    /// Duality pairing `sum_i x_i y_i`.
    ///
    /// At least one argument must be finitely supported; the other may have
    /// any tail. The sum runs over the support of the finitely supported one.
    pub fn pairing(&self, other: &Self) -> Result<S> {
        let (bounded, summable) = if other.is_finitely_supported() {
            (self, other)
        } else if self.is_finitely_supported() {
            (other, self)
        } else {
            return Err(Error::NonSummable);
        };
        Ok(summable
            .prefix
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (i, y)| acc + bounded.entry(i + 1) * y.clone()))
    }

    pub fn sup_norm(&self) -> S {
        self.prefix
            .iter()
            .map(|a| a.abs())
            .fold(self.tail.abs(), |m, a| if a > m { a } else { m })
    }

    pub fn l1_norm(&self) -> Result<S> {
        self.require_summable()?;
        Ok(self.prefix.iter().fold(S::zero(), |acc, a| acc + a.abs()))
    }

    /// `sum_i a_i` for a finitely supported sequence.
    pub fn total_sum(&self) -> Result<S> {
        self.require_summable()?;
        Ok(self.prefix.iter().fold(S::zero(), |acc, a| acc + a.clone()))
    }

    fn require_summable(&self) -> Result<()> {
        if self.is_finitely_supported() {
            Ok(())
        } else {
            Err(Error::NonSummable)
        }
    }
}

impl<S: Scalar> Default for EvConstSeq<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Add for &EvConstSeq<S> {
    type Output = EvConstSeq<S>;
    fn add(self, rhs: Self) -> EvConstSeq<S> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<S: Scalar> Sub for &EvConstSeq<S> {
    type Output = EvConstSeq<S>;
    fn sub(self, rhs: Self) -> EvConstSeq<S> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<S: Scalar> Neg for &EvConstSeq<S> {
    type Output = EvConstSeq<S>;
    fn neg(self) -> EvConstSeq<S> {
        EvConstSeq {
            prefix: self.prefix.iter().map(|a| -a.clone()).collect(),
            tail: -self.tail.clone(),
        }
    }
}

impl<S: Scalar> Add for EvConstSeq<S> {
    type Output = EvConstSeq<S>;
    fn add(self, rhs: Self) -> EvConstSeq<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for EvConstSeq<S> {
    type Output = EvConstSeq<S>;
    fn sub(self, rhs: Self) -> EvConstSeq<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for EvConstSeq<S> {
    type Output = EvConstSeq<S>;
    fn neg(self) -> EvConstSeq<S> {
        -&self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for EvConstSeq<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for a in &self.prefix {
            write!(f, "{a}, ")?;
        }
        write!(f, "{}, ...)", self.tail)
    }
}

impl<S: fmt::Debug> fmt::Debug for EvConstSeq<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvConstSeq({:?}, tail {:?})", self.prefix, self.tail)
    }
}

/// Formats a rational as `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`: expected `p/q` or `p` with integer p and nonzero q")]
pub struct ParseRationalError(pub String);

/// Parses `p/q` or `p`. Non-reduced input is accepted and reduced.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter for a single rational serialized as a `p/q` string.
/// Integers are also accepted on input.
pub mod rational_str {
    use super::*;

    pub fn serialize<Ser: Serializer>(r: &Rational, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?.into_rational().map_err(de::Error::custom)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Str(String),
        Int(i64),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> std::result::Result<Rational, ParseRationalError> {
            match self {
                RationalRepr::Str(s) => parse_rational(&s),
                RationalRepr::Int(n) => Ok(Rational::from_integer(n.into())),
            }
        }
    }
}

// Wire form: `{"prefix": ["p/q", ...], "tail": "p/q"}`.
impl Serialize for EvConstSeq<Rational> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            prefix: Vec<String>,
            tail: &'a str,
        }
        let tail = format_rational(&self.tail);
        Out { prefix: self.prefix.iter().map(format_rational).collect(), tail: &tail }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EvConstSeq<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            #[serde(default)]
            prefix: Vec<rational_str::RationalRepr>,
            tail: rational_str::RationalRepr,
        }
        let raw = In::deserialize(d)?;
        let prefix = raw
            .prefix
            .into_iter()
            .map(|r| r.into_rational())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        let tail = raw.tail.into_rational().map_err(de::Error::custom)?;
        Ok(EvConstSeq::new(prefix, tail))
    }
}
