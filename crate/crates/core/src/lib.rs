//! Exact interval sets, measurable functions given by their level sets, and
//! certificate-producing constructions for the classical "nearly" theorems
//! of measure theory: every measurable set is nearly a finite union of
//! intervals, every convergent sequence nearly uniformly convergent, every
//! measurable function nearly continuous and nearly bounded.

pub mod curves;
pub mod demo;
pub mod error;
pub mod functions;
pub mod interval;
pub mod oracle;
pub mod principles;
pub mod scenario;

pub use error::{Error, Result};
pub use functions::{Function, MeasurableFn, PointwiseSequence};
pub use interval::{ExtendedRational, Interval, IntervalSet, Rational};
pub use oracle::{verify, Inputs, VerificationReport};
pub use principles::Certificate;
