//! Stock sequences used by demos, scenarios and tests.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dyadic::{dyadic_level, dyadic_simple_approx};
use super::function::Function;
use super::linear::{LinearPiece, PiecewiseLinear};
use super::sequence::{Evaluator, TermFamily};
use super::step::StepFunction;
use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{dyadic, int, ExtendedRational, Interval, IntervalSet, Rational};

fn index(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Scenario("sequence indices start at 1".into()));
    }
    Ok(Rational::from_integer(BigInt::from(n)))
}

fn iv(lo: &Rational, hi: &Rational, lo_closed: bool, hi_closed: bool) -> Option<Interval> {
    Interval::try_new(lo.clone(), hi.clone(), lo_closed, hi_closed)
}

fn span(a: &Rational, b: &Rational, universe: &Interval) -> Result<Interval> {
    let s = Interval::closed(a.clone(), b.clone())?;
    if !s.is_subset_of(universe) {
        return Err(Error::ComponentOutsideUniverse(s.to_string(), universe.to_string()));
    }
    Ok(s)
}

/// `f_k(x) = max(0, 1 - k(b - x))` on `[a,b]`, converging to `𝒳_{b}`.
#[derive(Debug, Clone)]
pub struct RampSpike {
    a: Rational,
    b: Rational,
    universe: Interval,
}

impl RampSpike {
    pub fn new(a: Rational, b: Rational, universe: Interval) -> Result<Self> {
        span(&a, &b, &universe)?;
        if a == b {
            return Err(Error::InvalidInterval(format!("[{a},{b}] is degenerate")));
        }
        Ok(RampSpike { a, b, universe })
    }

    pub fn limit(&self) -> Function {
        let pieces = vec![
            LinearPiece::new(iv(&self.a, &self.b, true, false).expect("a < b"), Rational::zero(), Rational::zero()),
            LinearPiece::new(Interval::point(self.b.clone()), Rational::zero(), Rational::one()),
        ];
        PiecewiseLinear::new(self.universe.clone(), pieces).expect("pieces are disjoint").into()
    }
}

impl TermFamily for RampSpike {
    fn name(&self) -> String {
        "ramp_spike".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        let k = index(n)?;
        let foot = &self.b - k.recip();
        let offset = Rational::one() - &k * &self.b;
        let pieces = if foot <= self.a {
            vec![LinearPiece::new(span(&self.a, &self.b, &self.universe)?, k, offset)]
        } else {
            vec![
                LinearPiece::new(iv(&self.a, &foot, true, false).expect("a < foot"), Rational::zero(), Rational::zero()),
                LinearPiece::new(Interval::closed(foot, self.b.clone())?, k, offset),
            ]
        };
        Ok(PiecewiseLinear::new(self.universe.clone(), pieces)?.into())
    }
}

/// `f_n(x) = x/n` on `[a,b]`, converging to `0`.
#[derive(Debug, Clone)]
pub struct XOverN {
    domain: Interval,
    universe: Interval,
}

impl XOverN {
    pub fn new(a: Rational, b: Rational, universe: Interval) -> Result<Self> {
        Ok(XOverN { domain: span(&a, &b, &universe)?, universe })
    }

    pub fn limit(&self) -> Function {
        Function::zero(IntervalSet::from_interval(self.domain.clone(), self.universe.clone()).expect("inside universe"))
    }
}

impl TermFamily for XOverN {
    fn name(&self) -> String {
        "x_over_n".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        let k = index(n)?;
        Ok(PiecewiseLinear::affine(self.domain.clone(), self.universe.clone(), k.recip(), Rational::zero())?.into())
    }

    fn monotone_by_construction(&self) -> bool {
        self.domain.lo() >= &Rational::zero()
    }
}

/// `f_k = 𝒳_{[a, a + (b-a)/k)}` on `[a,b]`, converging to `𝒳_{a}`.
#[derive(Debug, Clone)]
pub struct ShrinkingIndicator {
    a: Rational,
    b: Rational,
    universe: Interval,
}

impl ShrinkingIndicator {
    pub fn new(a: Rational, b: Rational, universe: Interval) -> Result<Self> {
        span(&a, &b, &universe)?;
        if a == b {
            return Err(Error::InvalidInterval(format!("[{a},{b}] is degenerate")));
        }
        Ok(ShrinkingIndicator { a, b, universe })
    }

    fn cut(&self, n: u64) -> Result<Rational> {
        Ok(&self.a + (&self.b - &self.a) / index(n)?)
    }

    fn indicator(&self, on: Option<Interval>) -> Function {
        let whole = IntervalSet::from_interval(span(&self.a, &self.b, &self.universe).expect("checked"), self.universe.clone())
            .expect("checked");
        let on = match on {
            Some(i) => IntervalSet::from_interval(i, self.universe.clone()).expect("inside span"),
            None => IntervalSet::empty(self.universe.clone()),
        };
        let off = whole.minus(&on);
        StepFunction::new(self.universe.clone(), vec![(on, int(1).into()), (off, ExtendedRational::zero())])
            .expect("carriers are disjoint")
            .into()
    }

    pub fn limit(&self) -> Function {
        self.indicator(Some(Interval::point(self.a.clone())))
    }

    /// `e_n = 𝒳_{(a, a + (b-a)/n)}`.
    pub fn envelope(&self) -> ShrinkingIndicatorEnvelope {
        ShrinkingIndicatorEnvelope(self.clone())
    }
}

impl TermFamily for ShrinkingIndicator {
    fn name(&self) -> String {
        "shrinking_indicator".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        Ok(self.indicator(iv(&self.a, &self.cut(n)?, true, false)))
    }
}

#[derive(Debug, Clone)]
pub struct ShrinkingIndicatorEnvelope(ShrinkingIndicator);

impl TermFamily for ShrinkingIndicatorEnvelope {
    fn name(&self) -> String {
        "shrinking_indicator_envelope".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        Ok(self.0.indicator(iv(&self.0.a, &self.0.cut(n)?, false, false)))
    }
}

/// `f_k = (1/k) 𝒳_E` on a domain containing `E`, converging to `0`.
#[derive(Debug, Clone)]
pub struct StepDecay {
    carrier: IntervalSet,
    domain: IntervalSet,
}

impl StepDecay {
    pub fn new(carrier: IntervalSet, domain: IntervalSet) -> Result<Self> {
        if !carrier.is_subset_of(&domain)? {
            return Err(Error::DomainMismatch);
        }
        Ok(StepDecay { carrier, domain })
    }

    pub fn limit(&self) -> Function {
        Function::zero(self.domain.clone())
    }
}

impl TermFamily for StepDecay {
    fn name(&self) -> String {
        "step_decay".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        let k = index(n)?;
        let rest = self.domain.minus(&self.carrier);
        let universe = self.domain.universe().clone();
        Ok(StepFunction::new(universe, vec![(self.carrier.clone(), k.recip().into()), (rest, ExtendedRational::zero())])?
            .into())
    }

    fn monotone_by_construction(&self) -> bool {
        true
    }
}

/// `f_n = f` for every `n`.
#[derive(Debug, Clone)]
pub struct ConstantFamily(pub Function);

impl TermFamily for ConstantFamily {
    fn name(&self) -> String {
        "constant".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        index(n)?;
        Ok(self.0.clone())
    }

    fn eval_term(&self, _n: u64, x: &Rational) -> Result<ExtendedRational> {
        self.0.eval(x)
    }

    fn evaluator(&self, n: u64) -> Result<Evaluator> {
        index(n)?;
        let f = self.0.clone();
        Ok(Box::new(move |x| f.eval(x)))
    }

    fn deviation_below(&self, _n: u64, t: &Rational) -> Option<Result<IntervalSet>> {
        Some(Ok(if t > &Rational::zero() {
            self.0.domain().clone()
        } else {
            IntervalSet::empty(self.0.domain().universe().clone())
        }))
    }

    fn monotone_by_construction(&self) -> bool {
        true
    }
}

/// The dyadic simple approximations `s_n` of a nonnegative `f`.
#[derive(Debug, Clone)]
pub struct DyadicFamily(Function);

impl DyadicFamily {
    pub fn new(f: Function) -> Result<Self> {
        if !f.is_nonnegative() {
            return Err(Error::NegativeFunction);
        }
        Ok(DyadicFamily(f))
    }

    pub fn limit(&self) -> &Function {
        &self.0
    }
}

impl TermFamily for DyadicFamily {
    fn name(&self) -> String {
        "dyadic".into()
    }

    fn term(&self, n: u64) -> Result<Function> {
        index(n)?;
        Ok(dyadic_simple_approx(&self.0, n as u32)?.into())
    }

    fn eval_term(&self, n: u64, x: &Rational) -> Result<ExtendedRational> {
        Ok(dyadic_level(&self.0.eval(x)?, n as u32).into())
    }

    fn evaluator(&self, n: u64) -> Result<Evaluator> {
        index(n)?;
        let f = self.0.clone();
        Ok(Box::new(move |x| Ok(dyadic_level(&f.eval(x)?, n as u32).into())))
    }

    fn deviation_below(&self, n: u64, t: &Rational) -> Option<Result<IntervalSet>> {
        Some(index(n).map(|_| dyadic_tail(&self.0, n as u32, t)))
    }

    fn monotone_by_construction(&self) -> bool {
        true
    }

    fn breakpoints(&self, _n: u64) -> Vec<Rational> {
        self.0.breakpoints()
    }
}

/// `{x : f(x) - s_n(x) < t}`. Within a band `j/2^n ≤ f < (j+1)/2^n` the
/// error is `f - j/2^n`; above the cap `n` it is `f - n`.
fn dyadic_tail<F: MeasurableFn + ?Sized>(f: &F, n: u32, t: &Rational) -> IntervalSet {
    let universe = f.domain().universe().clone();
    if t <= &Rational::zero() {
        return IntervalSet::empty(universe);
    }
    let cap = int(n as i64);
    let step = dyadic(n);
    if t >= &step {
        return f.level_lt(&(&cap + t));
    }
    let top: u64 = (n as u64) << n;
    let level = |j: u64| Rational::from_integer(BigInt::from(j)) * &step;
    let band = |lo: &Rational| f.level_ge(lo).minus(&f.level_ge(&(lo + t)));
    let mut out = band(&cap);
    // only bands meeting the range of f contribute
    let nonempty = |j: u64| !f.level_ge(&level(j)).is_empty();
    let (mut lo, mut hi) = (0u64, top);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if nonempty(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let j_hi = lo.min(top - 1);
    let whole = |j: u64| f.level_ge(&level(j)) == *f.domain();
    let (mut lo, mut hi) = (0u64, j_hi);
    if !whole(hi) {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if whole(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    } else {
        lo = hi;
    }
    for j in lo..=j_hi {
        out = out.or(&band(&level(j)));
    }
    out
}

type TermFn = dyn Fn(u64) -> Result<Function> + Send + Sync;

/// A family given by a closure.
#[derive(Clone)]
pub struct FnFamily {
    name: String,
    f: Arc<TermFn>,
    monotone: bool,
}

impl FnFamily {
    pub fn new(name: impl Into<String>, f: impl Fn(u64) -> Result<Function> + Send + Sync + 'static) -> Self {
        FnFamily { name: name.into(), f: Arc::new(f), monotone: false }
    }

    /// Declares the deviations nonincreasing so no check is run.
    pub fn declared_monotone(mut self) -> Self {
        self.monotone = true;
        self
    }
}

impl fmt::Debug for FnFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnFamily").field("name", &self.name).finish()
    }
}

impl TermFamily for FnFamily {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn term(&self, n: u64) -> Result<Function> {
        index(n)?;
        (self.f)(n)
    }

    fn monotone_by_construction(&self) -> bool {
        self.monotone
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{PointwiseSequence, ReciprocalRamp, TailMode};
    use crate::interval::rat;

    fn unit() -> Interval {
        Interval::closed(int(0), int(1)).unwrap()
    }

    #[test]
    fn ramp_spike_tail() {
        let fam = RampSpike::new(int(0), int(1), unit()).unwrap();
        let seq = PointwiseSequence::from_monotone(fam.limit(), Arc::new(fam)).unwrap();
        assert_eq!(seq.contract().checked_to, Some(DEFAULT));
        assert_eq!(seq.tail_lt(4, &rat(1, 2)).unwrap().to_string(), "[0,7/8) u [1,1]");
        assert_eq!(seq.eval_deviation(2, &rat(3, 4)).unwrap(), rat(1, 2).into());
        assert_eq!(seq.eval_deviation(2, &int(1)).unwrap(), int(0).into());
    }
    const DEFAULT: u64 = crate::functions::DEFAULT_CHECK_DEPTH;

    #[test]
    fn shrinking_indicator_envelope_tail() {
        let fam = ShrinkingIndicator::new(int(0), int(1), unit()).unwrap();
        let seq = PointwiseSequence::from_envelope(fam.limit(), Arc::new(fam.clone()), Arc::new(fam.envelope()), 16).unwrap();
        assert_eq!(seq.mode(), TailMode::Envelope);
        assert_eq!(seq.tail_lt(4, &rat(1, 2)).unwrap().to_string(), "[0,0] u [1/4,1]");
    }

    #[test]
    fn growing_deviation_is_not_monotone() {
        let grow = FnFamily::new("grow", |n| {
            Ok(PiecewiseLinear::affine(unit(), unit(), Rational::zero(), int(n as i64))?.into())
        });
        let limit = Function::zero(IntervalSet::full(unit()));
        assert!(matches!(
            PointwiseSequence::from_monotone(limit, Arc::new(grow)),
            Err(Error::MonotonicityViolation(1, 2))
        ));
    }

    #[test]
    fn dyadic_tail_matches_pointwise() {
        let f: Function = ReciprocalRamp::new(int(0), int(1), int(1), unit()).unwrap().into();
        let fam = DyadicFamily::new(f.clone()).unwrap();
        let seq = PointwiseSequence::from_monotone(f, Arc::new(fam)).unwrap();
        for n in 1..=4u64 {
            for t in [rat(1, 40), rat(1, 8), rat(1, 2), int(3)] {
                let tail = seq.tail_lt(n, &t).unwrap();
                for k in 1..=200 {
                    let x = rat(k, 200);
                    let inside = seq.eval_deviation(n, &x).unwrap() < t.clone().into();
                    assert_eq!(tail.contains(&x), inside, "n={n} t={t} x={x}");
                }
            }
        }
    }

    #[test]
    fn x_over_n_tail() {
        let fam = XOverN::new(int(0), int(1), unit()).unwrap();
        let seq = PointwiseSequence::from_monotone(fam.limit(), Arc::new(fam)).unwrap();
        assert_eq!(seq.tail_lt(3, &rat(1, 6)).unwrap().to_string(), "[0,1/2)");
    }
}
