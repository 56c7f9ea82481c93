use std::fmt::Debug;

use num_traits::Signed;

/// Scalar field the sequence spaces are built over.
///
/// Any signed number type works for the linear algebra. The certificates in
/// [`crate::certify`] compare values for exact equality and strict sign, which
/// is only sound over an exact field such as [`crate::Rational`].
pub trait Scalar: Signed + Clone + PartialOrd + Debug {}

impl<T: Signed + Clone + PartialOrd + Debug> Scalar for T {}
