//! Benchmark fixtures.

use std::sync::Arc;

use nearly::functions::{Function, PointwiseSequence, RampSpike, ReciprocalRamp, StepDecay, StepFunction};
use nearly::interval::{int, rat, Interval, IntervalSet};

pub fn unit() -> Interval {
    Interval::closed(int(0), int(1)).expect("0 < 1")
}

/// `n` disjoint half-open intervals spread over `[0,1]`, offset by `shift` of a cell.
pub fn comb(n: i64, shift: i64) -> IntervalSet {
    let den = 4 * n;
    let raw = (0..n)
        .map(|i| Interval::new(rat(4 * i + shift, den), rat(4 * i + shift + 2, den), true, false).expect("ordered"))
        .collect();
    IntervalSet::normalize(raw, unit()).expect("inside [0,1]")
}

pub fn reciprocal() -> Function {
    ReciprocalRamp::new(int(0), int(1), int(1), unit()).expect("valid ramp").into()
}

/// A step function with `n` alternating values.
pub fn staircase(n: i64) -> Function {
    let pieces = (0..n)
        .map(|i| {
            let last = i == n - 1;
            let iv = Interval::new(rat(i, n), rat(i + 1, n), true, last).expect("ordered");
            (IntervalSet::from_interval(iv, unit()).expect("inside"), rat(i % 3, 2).into())
        })
        .collect();
    StepFunction::new(unit(), pieces).expect("disjoint").into()
}

pub fn spike() -> PointwiseSequence {
    let f = RampSpike::new(int(0), int(1), unit()).expect("valid spike");
    PointwiseSequence::from_monotone(f.limit(), Arc::new(f)).expect("monotone")
}

pub fn decay() -> PointwiseSequence {
    let f = StepDecay::new(comb(8, 0), IntervalSet::full(unit())).expect("valid decay");
    PointwiseSequence::from_monotone(f.limit(), Arc::new(f)).expect("monotone")
}
