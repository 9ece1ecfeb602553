//! Measurable functions exposed through exact level sets.
//!
//! Every concrete kind answers `L(f,t) = {x : f(x) > t}` and
//! `L*(f,t) = {x : f(x) ≥ t}` exactly as [`IntervalSet`]s, which is all the
//! constructions in [`crate::principles`] ever ask of a function.

mod dyadic;
mod families;
mod function;
mod linear;
mod ramp;
mod restrict;
mod sequence;
mod step;
mod sup;

pub use dyadic::{dyadic_level, dyadic_simple_approx};
pub use families::{
    ConstantFamily, DyadicFamily, FnFamily, RampSpike, ShrinkingIndicator, ShrinkingIndicatorEnvelope, StepDecay,
    XOverN,
};
pub use function::{pos_neg_decompose, Function};
pub use linear::{LinearPiece, PiecewiseLinear};
pub use ramp::ReciprocalRamp;
pub use restrict::Restricted;
pub use sequence::{Evaluator, PointwiseSequence, TailContract, TailMode, TermFamily, DEFAULT_CHECK_DEPTH};
pub use step::{StepFunction, StepPiece};
pub use sup::{sup_bracket, sup_on};

use crate::error::Result;
use crate::interval::{ExtendedRational, IntervalSet, Rational};

/// Level-set oracle contract.
pub trait MeasurableFn {
    fn domain(&self) -> &IntervalSet;

    /// `{x ∈ domain : f(x) > t}`
    fn level_gt(&self, t: &Rational) -> IntervalSet;

    /// `{x ∈ domain : f(x) ≥ t}`
    fn level_ge(&self, t: &Rational) -> IntervalSet;

    fn plus_infinity_set(&self) -> IntervalSet;

    fn minus_infinity_set(&self) -> IntervalSet;

    fn eval(&self, x: &Rational) -> Result<ExtendedRational>;

    fn level_lt(&self, t: &Rational) -> IntervalSet {
        self.domain().minus(&self.level_ge(t))
    }

    fn level_le(&self, t: &Rational) -> IntervalSet {
        self.domain().minus(&self.level_gt(t))
    }

    /// `L(|f|, t)` for `t ≥ 0`.
    fn abs_level_gt(&self, t: &Rational) -> IntervalSet {
        self.level_gt(t).or(&self.level_lt(&-t))
    }

    /// `{x : |f(x)| < t}` for `t > 0`.
    fn abs_level_lt(&self, t: &Rational) -> IntervalSet {
        self.level_lt(t).and(&self.level_gt(&-t))
    }
}

/// Measure of the set where `f` is infinite, and whether that is zero.
pub fn is_finite_ae<F: MeasurableFn + ?Sized>(f: &F) -> (bool, Rational) {
    let bad = f.plus_infinity_set().or(&f.minus_infinity_set()).measure();
    (num_traits::Zero::is_zero(&bad), bad)
}
