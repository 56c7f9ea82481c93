//! Certificates for monotonicity, maximality, the Gossez closure and the
//! failure of type (D) for `T(x) = { y : -G(y) = x }` on `c0`.
//!
//! Pairings follow one convention throughout: the first argument is the
//! `c0`/`l∞` side (points `x`, `x**`), the second is the `l1` side (`y`, `x*`).
//! The closure inequality `<x* - y*, x** - y> >= 0` is evaluated as
//! `pairing(x** - y, x* - y*)`; the value is a single scalar either way.
//!
//! Maximality is a universally quantified statement, so sampling graph(T)
//! can never establish it. [`violation_witness`] instead decides membership
//! constructively for every representable candidate pair and, for a
//! non-member, returns a graph point that breaks monotonicity.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gossez::{gossez_apply, unit_u, unit_v};
use crate::scalar::Scalar;
use crate::seqspace::EvConstSeq;
use crate::{Rational, RationalGraphPoint, Seq};

/// A pair `(x, y)` in graph(T): `x = -G(y)` and `sum_i y_i = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPoint<S> {
    x: EvConstSeq<S>,
    y: EvConstSeq<S>,
}

impl<S: Scalar> GraphPoint<S> {
    /// Graph point over `y`, which must be finitely supported with zero sum.
    pub fn from_y(y: EvConstSeq<S>) -> Result<Self> {
        if !y.total_sum()?.is_zero() {
            return Err(Error::InvalidParameter(
                "graph point requires sum_i y_i = 0".into(),
            ));
        }
        let x = -gossez_apply(&y)?;
        Ok(GraphPoint { x, y })
    }

    /// Validates an explicit pair against `x = -G(y)`.
    pub fn new(x: EvConstSeq<S>, y: EvConstSeq<S>) -> Result<Self> {
        let p = Self::from_y(y)?;
        if p.x != x {
            return Err(Error::InvalidParameter("graph point requires x = -G(y)".into()));
        }
        Ok(p)
    }

    pub fn origin() -> Self {
        GraphPoint { x: EvConstSeq::zero(), y: EvConstSeq::zero() }
    }

    pub fn x(&self) -> &EvConstSeq<S> {
        &self.x
    }

    pub fn y(&self) -> &EvConstSeq<S> {
        &self.y
    }
}

/// A point `(x**, x*) = (-G(tau * ytilde) + e / tau, tau * ytilde)` of the
/// Gossez closure of `T`, with `<ytilde, e> > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionPoint<S> {
    tau: S,
    ytilde: EvConstSeq<S>,
    xstar: EvConstSeq<S>,
    xstarstar: EvConstSeq<S>,
}

impl<S: Scalar> ExtensionPoint<S> {
    pub fn tau(&self) -> &S {
        &self.tau
    }

    pub fn ytilde(&self) -> &EvConstSeq<S> {
        &self.ytilde
    }

    /// The `l1` component `tau * ytilde`.
    pub fn xstar(&self) -> &EvConstSeq<S> {
        &self.xstar
    }

    /// The `l∞` component `x^tau`. Its tail is
    /// `tau * sum(ytilde) + 1 / tau`, never zero, so it is not in `c0`.
    pub fn xstarstar(&self) -> &EvConstSeq<S> {
        &self.xstarstar
    }

    /// `<ytilde, e>`, the predicted closure margin and Fitzpatrick gap.
    pub fn e_pairing(&self) -> S {
        pair(&EvConstSeq::constant(S::one()), &self.ytilde)
    }

    /// `<x*, x**>`.
    pub fn self_pairing(&self) -> S {
        pair(&self.xstarstar, &self.xstar)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WitnessVerdict<S> {
    Member,
    /// `pairing(x - witness.x, y - witness.y) = product < 0`.
    Violation { witness: GraphPoint<S>, product: S },
}

impl<S: Scalar> WitnessVerdict<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, WitnessVerdict::Member)
    }

    /// Re-evaluates the monotone product of the candidate `(x, y)` against
    /// the witness. `None` for [`WitnessVerdict::Member`].
    pub fn recompute_product(&self, x: &EvConstSeq<S>, y: &EvConstSeq<S>) -> Option<Result<S>> {
        match self {
            WitnessVerdict::Member => None,
            WitnessVerdict::Violation { witness, .. } => {
                Some((x - &witness.x).pairing(&(y - &witness.y)))
            }
        }
    }
}

// Both operands here are built so that at least one side is finitely supported.
fn pair<S: Scalar>(bounded: &EvConstSeq<S>, summable: &EvConstSeq<S>) -> S {
    bounded
        .pairing(summable)
        .expect("pairing operand is finitely supported")
}

/// `<p.x - q.x, p.y - q.y>`. Zero for every pair of graph points, since `T`
/// is linear and skew.
pub fn monotone_product<S: Scalar>(p: &GraphPoint<S>, q: &GraphPoint<S>) -> S {
    pair(&(&p.x - &q.x), &(&p.y - &q.y))
}

/// Builds `(x^tau, tau * ytilde)` with `x^tau = -G(tau * ytilde) + e / tau`.
pub fn extension_point<S: Scalar>(tau: S, ytilde: EvConstSeq<S>) -> Result<ExtensionPoint<S>> {
    if tau <= S::zero() {
        return Err(Error::InvalidParameter("tau must be positive".into()));
    }
    let e_pairing = ytilde.total_sum()?;
    if e_pairing <= S::zero() {
        return Err(Error::InvalidParameter("<ytilde, e> must be positive".into()));
    }
    let xstar = ytilde.scale(&tau);
    let shift = EvConstSeq::constant(S::one() / tau.clone());
    let xstarstar = &shift - &gossez_apply(&xstar)?;
    Ok(ExtensionPoint { tau, ytilde, xstar, xstarstar })
}

/// `<x** - p.x, x* - p.y>`. For every graph point this equals
/// `<ytilde, e> > 0`, which puts `(x**, x*)` in the Gossez closure.
pub fn closure_margin<S: Scalar>(ep: &ExtensionPoint<S>, p: &GraphPoint<S>) -> S {
    pair(&(&ep.xstarstar - &p.x), &(&ep.xstar - &p.y))
}

/// Monotone product of the closure points for `tau1` and `tau2`, computed
/// from the sequences and cross-checked against the closed form
/// `(tau1 - tau2)(1/tau1 - 1/tau2) <ytilde, e>`. A negative value means no
/// monotone extension of `T` contains both points.
pub fn distinctness<S: Scalar>(tau1: S, tau2: S, ytilde: &EvConstSeq<S>) -> Result<S> {
    if tau1 == tau2 {
        return Err(Error::InvalidParameter("taus must be distinct".into()));
    }
    let a = extension_point(tau1.clone(), ytilde.clone())?;
    let b = extension_point(tau2.clone(), ytilde.clone())?;
    let direct = pair(&(&a.xstarstar - &b.xstarstar), &(&a.xstar - &b.xstar));
    let closed = (tau1.clone() - tau2.clone())
        * (S::one() / tau1 - S::one() / tau2)
        * a.e_pairing();
    if direct != closed {
        return Err(Error::CheckFailed(format!(
            "distinctness product {direct:?} differs from closed form {closed:?}"
        )));
    }
    if direct >= S::zero() {
        return Err(Error::CheckFailed(format!(
            "distinctness product {direct:?} is not negative"
        )));
    }
    Ok(direct)
}

/// `<p.x, x*> + <p.y, x**> - <p.x, p.y>`, the term under the supremum in
/// the Fitzpatrick-type gap.
pub fn fitzpatrick_value<S: Scalar>(ep: &ExtensionPoint<S>, p: &GraphPoint<S>) -> S {
    pair(&p.x, &ep.xstar) + pair(&ep.xstarstar, &p.y) - pair(&p.x, &p.y)
}

/// `<x*, x**> - max_p fitzpatrick_value(ep, p)` over the sample.
///
/// Fails unless the value is constant over the sample and the gap equals
/// `<ytilde, e> > 0`.
pub fn fitzpatrick_gap<S: Scalar>(ep: &ExtensionPoint<S>, sample: &[GraphPoint<S>]) -> Result<S> {
    let (first, rest) = sample.split_first().ok_or(Error::EmptySample)?;
    let sup = fitzpatrick_value(ep, first);
    for p in rest {
        let v = fitzpatrick_value(ep, p);
        if v != sup {
            return Err(Error::CheckFailed(format!(
                "fitzpatrick value not constant: {v:?} vs {sup:?}"
            )));
        }
    }
    let gap = ep.self_pairing() - sup;
    let expected = ep.e_pairing();
    if gap != expected || gap <= S::zero() {
        return Err(Error::CheckFailed(format!(
            "gap {gap:?} differs from <ytilde, e> = {expected:?}"
        )));
    }
    Ok(gap)
}

/// Decides whether `(x, y)` lies in graph(T), returning a graph point that
/// violates monotonicity with it when it does not.
///
/// Monotonicity against `(-l v^m, l u^m)` for all real `l` forces
/// `x_{m+1} - x_m = y_{m+1} + y_m`. At the first index where this fails,
/// `l` is chosen so the product is exactly `-1` (the `l^2` term vanishes
/// because `<v^m, u^m> = 0`). If the recurrence holds everywhere then
/// `x = -G(y) - (sum y) e`, and pairing against the origin gives
/// `-(sum y)^2`, negative unless `sum y = 0`.
pub fn violation_witness<S: Scalar>(x: &EvConstSeq<S>, y: &EvConstSeq<S>) -> Result<WitnessVerdict<S>> {
    if !x.is_finitely_supported() || !y.is_finitely_supported() {
        return Err(Error::NonSummable);
    }
    let xy = pair(x, y);
    let support = x.len().max(y.len());
    for m in 1..=support + 1 {
        let lhs = x.entry(m + 1) - x.entry(m);
        let rhs = y.entry(m + 1) + y.entry(m);
        if lhs == rhs {
            continue;
        }
        let u = unit_u::<S>(m);
        let v = unit_v::<S>(m);
        let d = pair(&v, y) - pair(x, &u);
        let lambda = -(xy + S::one()) / d;
        let witness = GraphPoint { x: -v.scale(&lambda), y: u.scale(&lambda) };
        let product = pair(&(x - &witness.x), &(y - &witness.y));
        if product != -S::one() {
            return Err(Error::CheckFailed(format!(
                "step-1 witness product {product:?} at m = {m} is not -1"
            )));
        }
        return Ok(WitnessVerdict::Violation { witness, product });
    }
    let total = y.total_sum()?;
    if !total.is_zero() {
        let product = xy;
        if product != -(total.clone() * total) || product >= S::zero() {
            return Err(Error::CheckFailed(format!(
                "origin witness product {product:?} is not -(sum y)^2"
            )));
        }
        return Ok(WitnessVerdict::Violation { witness: GraphPoint::origin(), product });
    }
    if &-gossez_apply(y)? != x {
        return Err(Error::CheckFailed("recurrence holds but x != -G(y)".into()));
    }
    Ok(WitnessVerdict::Member)
}

/// Sampling bounds for random test vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleParams {
    /// Largest index that may carry a nonzero entry; at least 2.
    pub support_max: usize,
    /// Bound on numerators (in absolute value) and denominators.
    pub coeff_bound: u64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { support_max: 16, coeff_bound: 100 }
    }
}

/// Deterministic generator for stream `stream` of `seed`. Workers that draw
/// concurrently each take their own stream.
pub fn sampler(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Rational {
    let bound = bound.max(1) as i64;
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    crate::ratio(p, q)
}

/// Random finitely supported sequence with support in `1..=support_max`.
pub fn random_finite_seq<R: Rng + ?Sized>(rng: &mut R, params: SampleParams) -> Seq {
    let len = rng.gen_range(1..=params.support_max.max(1));
    Seq::finite((0..len).map(|_| random_rational(rng, params.coeff_bound)).collect())
}

/// Random point of graph(T): a random finitely supported `y` whose last
/// nonzero entry is replaced so that `sum_i y_i = 0`, paired with `-G(y)`.
pub fn random_graph_point<R: Rng + ?Sized>(rng: &mut R, params: SampleParams) -> RationalGraphPoint {
    assert!(params.support_max >= 2, "support_max must be at least 2");
    let len = rng.gen_range(2..=params.support_max);
    let mut entries: Vec<Rational> =
        (0..len).map(|_| random_rational(rng, params.coeff_bound)).collect();
    if let Some(last) = entries.iter().rposition(|a| !num_traits::Zero::is_zero(a)) {
        let others: Rational = entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != last)
            .map(|(_, a)| a.clone())
            .sum();
        entries[last] = -others;
    }
    let y = Seq::finite(entries);
    let x = -gossez_apply(&y).expect("finite sequence");
    GraphPoint { x, y }
}

/// Random pair `(x, y)` obtained by moving a graph point by a nonzero,
/// finitely supported delta that keeps it outside graph(T). The delta hits
/// `x` only, `y` only, or both, in rotation by draw.
pub fn random_perturbation<R: Rng + ?Sized>(
    rng: &mut R,
    p: &RationalGraphPoint,
    params: SampleParams,
) -> (Seq, Seq) {
    let nonzero = |rng: &mut R| loop {
        let d = random_finite_seq(rng, params);
        if !d.is_zero() {
            break d;
        }
    };
    let (dx, dy) = match rng.gen_range(0..3) {
        0 => (nonzero(rng), Seq::zero()),
        1 => (Seq::zero(), nonzero(rng)),
        _ => {
            let dy = nonzero(rng);
            let mut dx = nonzero(rng);
            // (dx, dy) in graph(T) would keep the sum in graph(T) by linearity
            if GraphPoint::new(dx.clone(), dy.clone()).is_ok() {
                dx = &dx + &Seq::unit(1);
            }
            (dx, dy)
        }
    };
    (&p.x + &dx, &p.y + &dy)
}
