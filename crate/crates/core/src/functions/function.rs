use num_traits::{Signed, Zero};

use super::linear::PiecewiseLinear;
use super::ramp::ReciprocalRamp;
use super::step::StepFunction;
use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{ExtendedRational, IntervalSet, Rational};

/// The concrete function kinds, closed under the pointwise algebra where
/// it is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Function {
    Step(StepFunction),
    Linear(PiecewiseLinear),
    Reciprocal(ReciprocalRamp),
}

#[derive(Debug, Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Max,
    Min,
}

impl Function {
    pub fn kind(&self) -> &'static str {
        match self {
            Function::Step(_) => "step",
            Function::Linear(_) => "pl",
            Function::Reciprocal(_) => "recip",
        }
    }

    pub fn zero(domain: IntervalSet) -> Function {
        Function::Step(StepFunction::zero(domain))
    }

    /// Points where the formula may change: piece endpoints, or the domain
    /// endpoints for a reciprocal.
    pub fn breakpoints(&self) -> Vec<Rational> {
        match self {
            Function::Step(s) => s.breakpoints(),
            Function::Linear(p) => p.breakpoints(),
            Function::Reciprocal(r) => vec![r.pole().clone(), r.right().clone()],
        }
    }

    fn as_linear(&self) -> Result<PiecewiseLinear> {
        match self {
            Function::Linear(p) => Ok(p.clone()),
            Function::Step(s) => PiecewiseLinear::from_step(s),
            Function::Reciprocal(_) => Err(Error::KindMismatch("reciprocal functions have no exact pointwise algebra".into())),
        }
    }

    fn binary(&self, other: &Function, op: BinOp) -> Result<Function> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch);
        }
        match (self, other) {
            (Function::Step(a), Function::Step(b)) => a
                .combine(b, |x, y| match op {
                    BinOp::Add => x.checked_add(y),
                    BinOp::Sub => x.checked_sub(y),
                    BinOp::Max => Ok(x.max(y).clone()),
                    BinOp::Min => Ok(x.min(y).clone()),
                })
                .map(Function::Step),
            _ => {
                let (a, b) = (self.as_linear()?, other.as_linear()?);
                let out = match op {
                    BinOp::Add => a.add(&b)?,
                    BinOp::Sub => a.sub(&b)?,
                    BinOp::Max => a.extremum(&b, true)?,
                    BinOp::Min => a.extremum(&b, false)?,
                };
                Ok(Function::Linear(out))
            }
        }
    }

    pub fn add(&self, other: &Function) -> Result<Function> {
        self.binary(other, BinOp::Add)
    }

    pub fn sub(&self, other: &Function) -> Result<Function> {
        self.binary(other, BinOp::Sub)
    }

    pub fn max(&self, other: &Function) -> Result<Function> {
        self.binary(other, BinOp::Max)
    }

    pub fn min(&self, other: &Function) -> Result<Function> {
        self.binary(other, BinOp::Min)
    }

    pub fn scale(&self, c: &Rational) -> Result<Function> {
        match self {
            Function::Step(s) => s.map_values(|v| v.checked_scale(c)).map(Function::Step),
            Function::Linear(p) => Ok(Function::Linear(p.scale(c))),
            Function::Reciprocal(r) if c.is_positive() => r.scale(c).map(Function::Reciprocal),
            Function::Reciprocal(r) if c.is_zero() => Ok(Function::zero(r.domain().clone())),
            Function::Reciprocal(_) => Err(Error::KindMismatch("negative multiple of a reciprocal".into())),
        }
    }

    pub fn neg(&self) -> Result<Function> {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn abs(&self) -> Result<Function> {
        match self {
            Function::Step(s) => s.map_values(|v| Ok(v.abs())).map(Function::Step),
            Function::Linear(p) => Ok(Function::Linear(p.abs())),
            Function::Reciprocal(_) => Ok(self.clone()),
        }
    }

    /// `|self - other|`
    pub fn abs_diff(&self, other: &Function) -> Result<Function> {
        self.sub(other)?.abs()
    }

    pub fn restrict(&self, set: &IntervalSet) -> Result<Function> {
        match self {
            Function::Step(s) => Ok(Function::Step(s.restrict(set))),
            Function::Linear(p) => Ok(Function::Linear(p.restrict(set))),
            Function::Reciprocal(_) => Err(Error::KindMismatch("restriction of a reciprocal".into())),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.level_lt(&Rational::zero()).is_empty()
    }

    /// Exact test that the restriction to `set` is continuous.
    pub fn is_continuous_on(&self, set: &IntervalSet) -> bool {
        if set.universe() != self.domain().universe() || !set.minus(self.domain()).is_empty() {
            return false;
        }
        match self {
            Function::Step(s) => set.components().iter().all(|c| s.value_on(c).is_some_and(ExtendedRational::is_finite)),
            Function::Linear(p) => p.is_continuous_on(set),
            Function::Reciprocal(_) => true,
        }
    }
}

/// `f = f⁺ - f⁻` with `f⁺ = max(f,0)` and `f⁻ = max(-f,0)`.
pub fn pos_neg_decompose(f: &Function) -> Result<(Function, Function)> {
    let zero = Function::zero(f.domain().clone());
    if f.is_nonnegative() {
        return Ok((f.clone(), zero));
    }
    if f.level_gt(&Rational::zero()).is_empty() {
        return Ok((zero, f.neg()?));
    }
    Ok((f.max(&zero)?, f.neg()?.max(&zero)?))
}

impl MeasurableFn for Function {
    fn domain(&self) -> &IntervalSet {
        match self {
            Function::Step(s) => s.domain(),
            Function::Linear(p) => p.domain(),
            Function::Reciprocal(r) => r.domain(),
        }
    }

    fn level_gt(&self, t: &Rational) -> IntervalSet {
        match self {
            Function::Step(s) => s.level_gt(t),
            Function::Linear(p) => p.level_gt(t),
            Function::Reciprocal(r) => r.level_gt(t),
        }
    }

    fn level_ge(&self, t: &Rational) -> IntervalSet {
        match self {
            Function::Step(s) => s.level_ge(t),
            Function::Linear(p) => p.level_ge(t),
            Function::Reciprocal(r) => r.level_ge(t),
        }
    }

    fn level_lt(&self, t: &Rational) -> IntervalSet {
        match self {
            Function::Linear(p) => p.level_lt(t),
            _ => self.domain().minus(&self.level_ge(t)),
        }
    }

    fn level_le(&self, t: &Rational) -> IntervalSet {
        match self {
            Function::Linear(p) => p.level_le(t),
            _ => self.domain().minus(&self.level_gt(t)),
        }
    }

    fn plus_infinity_set(&self) -> IntervalSet {
        match self {
            Function::Step(s) => s.plus_infinity_set(),
            Function::Linear(p) => p.plus_infinity_set(),
            Function::Reciprocal(r) => r.plus_infinity_set(),
        }
    }

    fn minus_infinity_set(&self) -> IntervalSet {
        match self {
            Function::Step(s) => s.minus_infinity_set(),
            Function::Linear(p) => p.minus_infinity_set(),
            Function::Reciprocal(r) => r.minus_infinity_set(),
        }
    }

    fn eval(&self, x: &Rational) -> Result<ExtendedRational> {
        match self {
            Function::Step(s) => s.eval(x),
            Function::Linear(p) => p.eval(x),
            Function::Reciprocal(r) => r.eval(x),
        }
    }
}

impl From<StepFunction> for Function {
    fn from(s: StepFunction) -> Self {
        Function::Step(s)
    }
}

impl From<PiecewiseLinear> for Function {
    fn from(p: PiecewiseLinear) -> Self {
        Function::Linear(p)
    }
}

impl From<ReciprocalRamp> for Function {
    fn from(r: ReciprocalRamp) -> Self {
        Function::Reciprocal(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{int, rat, Interval};

    fn unit() -> Interval {
        Interval::closed(int(0), int(1)).unwrap()
    }

    fn dom() -> IntervalSet {
        IntervalSet::full(unit())
    }

    fn line(slope: i64, offset: i64) -> Function {
        PiecewiseLinear::affine(unit(), unit(), int(slope), int(offset)).unwrap().into()
    }

    fn step(parts: &[(&str, ExtendedRational)]) -> Function {
        StepFunction::new(
            unit(),
            parts.iter().map(|(s, v)| (IntervalSet::parse(s, unit()).unwrap(), v.clone())).collect(),
        )
        .unwrap()
        .into()
    }

    #[test]
    fn abs_of_negative_constant() {
        let f = Function::Step(StepFunction::constant(dom(), int(-2).into()));
        let a = f.abs().unwrap();
        assert_eq!(a.eval(&rat(1, 3)).unwrap(), int(2).into());
    }

    #[test]
    fn self_difference_is_zero() {
        let f = step(&[("[0,1/2)", int(3).into()), ("[1/2,1]", int(-1).into())]);
        let z = f.sub(&f).unwrap();
        let Function::Step(s) = z else { panic!() };
        assert_eq!(s.pieces().len(), 1);
        assert_eq!(s.pieces()[0].value, ExtendedRational::zero());
    }

    #[test]
    fn infinite_self_difference_is_an_error() {
        let f = step(&[("[0,1/2]", ExtendedRational::PosInfinity), ("(1/2,1]", int(0).into())]);
        assert!(matches!(f.sub(&f), Err(Error::UndefinedInfinityArithmetic(_))));
    }

    #[test]
    fn max_of_crossing_lines() {
        let m = line(1, 0).max(&line(-1, 1)).unwrap();
        let Function::Linear(p) = &m else { panic!() };
        assert_eq!(p.breakpoints(), vec![int(0), rat(1, 2), int(1)]);
    }

    #[test]
    fn mixed_kinds_promote_to_linear() {
        let s = step(&[("[0,1/2)", int(0).into()), ("[1/2,1]", int(1).into())]);
        let sum = s.add(&line(1, 0)).unwrap();
        assert_eq!(sum.kind(), "pl");
        assert_eq!(sum.eval(&rat(3, 4)).unwrap(), rat(7, 4).into());
        assert_eq!(sum.eval(&rat(1, 4)).unwrap(), rat(1, 4).into());
    }

    #[test]
    fn reciprocal_has_no_algebra() {
        let r: Function = ReciprocalRamp::new(int(0), int(1), int(1), unit()).unwrap().into();
        assert!(matches!(r.add(&r), Err(Error::KindMismatch(_))));
        assert_eq!(r.abs().unwrap(), r);
    }

    #[test]
    fn domain_mismatch() {
        let a = line(1, 0);
        let b: Function =
            PiecewiseLinear::affine(Interval::closed(int(0), rat(1, 2)).unwrap(), unit(), int(1), int(0)).unwrap().into();
        assert!(matches!(a.add(&b), Err(Error::DomainMismatch)));
    }

    #[test]
    fn pos_neg_of_sign_change_step() {
        let f = step(&[("[0,1/2)", int(-1).into()), ("[1/2,1]", int(1).into())]);
        let (p, m) = pos_neg_decompose(&f).unwrap();
        assert_eq!(p.level_gt(&int(0)).to_string(), "[1/2,1]");
        assert_eq!(m.level_gt(&int(0)).to_string(), "[0,1/2)");
        assert_eq!(p.sub(&m).unwrap().sub(&f).unwrap().level_gt(&int(0)).to_string(), "{}");
    }

    #[test]
    fn pos_neg_of_nonnegative_is_trivial() {
        let f = line(1, 0);
        let (p, m) = pos_neg_decompose(&f).unwrap();
        assert_eq!(p, f);
        assert!(m.level_gt(&int(0)).is_empty() && m.level_lt(&int(0)).is_empty());
    }

    #[test]
    fn pos_part_of_affine_has_root_breakpoint() {
        let f = line(2, -1);
        let (p, _) = pos_neg_decompose(&f).unwrap();
        assert_eq!(p.eval(&rat(1, 4)).unwrap(), int(0).into());
        assert_eq!(p.eval(&rat(3, 4)).unwrap(), rat(1, 2).into());
        assert!(p.breakpoints().contains(&rat(1, 2)));
    }

    #[test]
    fn step_continuity_on_subsets() {
        let f = step(&[("[0,1/2)", int(0).into()), ("[1/2,1]", int(1).into())]);
        assert!(!f.is_continuous_on(&dom()));
        assert!(f.is_continuous_on(&IntervalSet::parse("[0,1/4] u [1/2,1]", unit()).unwrap()));
    }
}
