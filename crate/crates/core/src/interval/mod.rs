//! Exact rational scalars and canonical finite unions of intervals.

mod literal;
mod rational;
mod set;
mod span;

pub use literal::{format_set, parse_interval, parse_set};
pub use rational::{
    ceil_log2, dyadic, format_rational, int, parse_rational, rat, serde_rational, ExtendedRational, Rational,
};
pub use set::IntervalSet;
pub use span::Interval;
pub(crate) use span::overlaps;
