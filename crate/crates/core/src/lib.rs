//! Exact model of a linear, maximal monotone operator on `c0` that is not of
//! Gossez type (D), together with a certificate engine that checks every
//! identity and inequality of the construction in exact arithmetic.
//!
//! Elements of `c0`, `l1` and `l∞` are modelled as eventually constant
//! sequences ([`EvConstSeq`]) over a generic [`Scalar`]. The certificates are
//! meaningful only over an exact field, so the crate root exposes the
//! arbitrary-precision instantiation as [`Rational`] / [`Seq`] and friends.

pub mod certify;
pub mod error;
pub mod gossez;
pub mod scalar;
pub mod seqspace;

pub use certify::{
    closure_margin, distinctness, extension_point, fitzpatrick_gap, fitzpatrick_value,
    monotone_product, random_graph_point, random_rational, violation_witness, ExtensionPoint,
    GraphPoint, SampleParams, WitnessVerdict,
};
pub use error::{Error, Result};
pub use gossez::{gossez_apply, range_member, t_solve, unit_u, unit_v};
pub use scalar::Scalar;
pub use seqspace::EvConstSeq;

/// Exact arbitrary-precision rational, the scalar every certificate runs on.
pub type Rational = num_rational::BigRational;
/// Eventually constant sequence of exact rationals.
pub type Seq = EvConstSeq<Rational>;
/// Point of graph(T) with exact entries.
pub type RationalGraphPoint = GraphPoint<Rational>;
/// Gossez-closure point with exact entries.
pub type RationalExtensionPoint = ExtensionPoint<Rational>;
/// Maximality verdict with exact entries.
pub type RationalVerdict = WitnessVerdict<Rational>;

/// Builds `num / den` as an exact [`Rational`].
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds the integer `n` as an exact [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
