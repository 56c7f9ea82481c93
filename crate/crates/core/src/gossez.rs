//! The Gossez operator `G: l1 -> l∞` and the operator `T: c0 => l1` defined by
//! `T(x) = { y in l1 : -G(y) = x }`.
//!
//! `G(y)_n = sum_{i > n} y_i - sum_{i < n} y_i`. It is linear, skew
//! (`<G(y), y> = 0`) and injective, and `G(y)` converges to `-sum_i y_i`, so
//! `-G(y)` lies in `c0` exactly when `sum_i y_i = 0`. That last condition
//! describes the range of `T`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seqspace::EvConstSeq;

/// Applies `G` to a finitely supported `y`.
///
/// The result has tail `-sum_i y_i`. Computed in one pass with running
/// prefix and suffix sums.
pub fn gossez_apply<S: Scalar>(y: &EvConstSeq<S>) -> Result<EvConstSeq<S>> {
    let total = y.total_sum()?;
    let mut before = S::zero();
    let mut after = total.clone();
    let mut out = Vec::with_capacity(y.len());
    for yn in y.prefix() {
        after = after - yn.clone();
        out.push(after.clone() - before.clone());
        before = before + yn.clone();
    }
    Ok(EvConstSeq::new(out, -total))
}

/// Solves `-G(y) = x` for a finitely supported `x`, i.e. evaluates `T(x)`.
///
/// With `S_i` the suffix sum of `y` from index `i` and `S_1 = 0`, the
/// equation reads `x_i = -(S_i + S_{i+1})`. Beyond the support of `x` every
/// suffix sum vanishes, so the backward recurrence `S_i = -x_i - S_{i+1}`
/// starts from zero there. The point is in dom(T) iff the recurrence returns
/// `S_1 = 0`. The answer is re-checked against [`gossez_apply`].
pub fn t_solve<S: Scalar>(x: &EvConstSeq<S>) -> Result<EvConstSeq<S>> {
    if !x.is_finitely_supported() {
        return Err(Error::NonSummable);
    }
    let n = x.len();
    let mut y = vec![S::zero(); n];
    let mut next = S::zero();
    for i in (0..n).rev() {
        let s = -x.prefix()[i].clone() - next.clone();
        y[i] = s.clone() - next;
        next = s;
    }
    if !next.is_zero() {
        return Err(Error::NotInDomain);
    }
    let y = EvConstSeq::finite(y);
    if &-gossez_apply(&y)? != x {
        return Err(Error::CheckFailed(format!(
            "t_solve produced y = {y:?} with -G(y) != x = {x:?}"
        )));
    }
    Ok(y)
}

/// `u^m`: `-1` at index `m`, `1` at index `m + 1`, zero elsewhere.
pub fn unit_u<S: Scalar>(m: usize) -> EvConstSeq<S> {
    &EvConstSeq::unit(m + 1) - &EvConstSeq::unit(m)
}

/// `v^m = G(u^m)`: `1` at indices `m` and `m + 1`, zero elsewhere.
pub fn unit_v<S: Scalar>(m: usize) -> EvConstSeq<S> {
    &EvConstSeq::unit(m + 1) + &EvConstSeq::unit(m)
}

/// Membership in the range of `T`: `sum_i y_i = 0`.
pub fn range_member<S: Scalar>(y: &EvConstSeq<S>) -> Result<bool> {
    Ok(y.total_sum()?.is_zero())
}
