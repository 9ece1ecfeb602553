use std::fmt::Debug;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::function::Function;
use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{ExtendedRational, IntervalSet, Rational};

/// How far monotonicity of the deviations is checked when it is not known
/// by construction.
pub const DEFAULT_CHECK_DEPTH: u64 = 64;

/// Pointwise evaluation of one fixed function.
pub type Evaluator = Box<dyn Fn(&Rational) -> Result<ExtendedRational> + Send + Sync>;

/// An indexed family `n ↦ f_n`, `n ≥ 1`.
pub trait TermFamily: Debug + Send + Sync {
    fn name(&self) -> String;

    fn term(&self, n: u64) -> Result<Function>;

    fn eval_term(&self, n: u64, x: &Rational) -> Result<ExtendedRational> {
        self.term(n)?.eval(x)
    }

    /// `x ↦ f_n(x)`, prepared once for many points.
    fn evaluator(&self, n: u64) -> Result<Evaluator> {
        let f = self.term(n)?;
        Ok(Box::new(move |x| f.eval(x)))
    }

    /// Closed form for `{x : |f_n(x) - f(x)| < t}` when the generic route
    /// through `term(n)` is unavailable or too slow.
    fn deviation_below(&self, _n: u64, _t: &Rational) -> Option<Result<IntervalSet>> {
        None
    }

    /// The deviations `|f_n - f|` are pointwise nonincreasing by construction.
    fn monotone_by_construction(&self) -> bool {
        false
    }

    fn breakpoints(&self, n: u64) -> Vec<Rational> {
        self.term(n).map(|f| f.breakpoints()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    /// `tail_lt(n,t) = {|f_n - f| < t}`; deviations are nonincreasing in `n`.
    Exact,
    /// `tail_lt(n,t) = {e_n < t}` for a nonincreasing envelope `e_n ≥ |f_k - f|`, `k ≥ n`.
    Envelope,
}

/// What a `tail_lt` answer guarantees, recorded in certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailContract {
    pub mode: TailMode,
    pub monotone_by_construction: bool,
    /// Depth to which monotonicity was checked exactly, if it was.
    pub checked_to: Option<u64>,
}

/// A sequence `f_n → f` together with a tail oracle.
#[derive(Debug, Clone)]
pub struct PointwiseSequence {
    domain: IntervalSet,
    limit: Function,
    terms: Arc<dyn TermFamily>,
    envelopes: Option<Arc<dyn TermFamily>>,
    checked_to: Option<u64>,
}

impl PointwiseSequence {
    pub fn from_monotone(limit: Function, terms: Arc<dyn TermFamily>) -> Result<Self> {
        Self::from_monotone_to_depth(limit, terms, DEFAULT_CHECK_DEPTH)
    }

    pub fn from_monotone_to_depth(limit: Function, terms: Arc<dyn TermFamily>, depth: u64) -> Result<Self> {
        let mut seq = PointwiseSequence {
            domain: limit.domain().clone(),
            limit,
            terms,
            envelopes: None,
            checked_to: None,
        };
        if !seq.terms.monotone_by_construction() {
            check_nonincreasing(|n| seq.deviation(n), depth)?;
            seq.checked_to = Some(depth);
        }
        Ok(seq)
    }

    /// Envelope mode. The envelopes must be nonincreasing and dominate the
    /// deviation at the same index; both are checked to `depth`.
    pub fn from_envelope(
        limit: Function,
        terms: Arc<dyn TermFamily>,
        envelopes: Arc<dyn TermFamily>,
        depth: u64,
    ) -> Result<Self> {
        let seq = PointwiseSequence {
            domain: limit.domain().clone(),
            limit,
            terms,
            envelopes: Some(envelopes.clone()),
            checked_to: Some(depth),
        };
        check_nonincreasing(|n| envelopes.term(n), depth)?;
        for n in 1..=depth {
            let slack = envelopes.term(n)?.sub(&seq.deviation(n)?)?;
            if !slack.level_lt(&Rational::zero()).is_empty() {
                return Err(Error::MonotonicityViolation(n, n));
            }
        }
        Ok(seq)
    }

    pub fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    pub fn limit(&self) -> &Function {
        &self.limit
    }

    pub fn terms(&self) -> &Arc<dyn TermFamily> {
        &self.terms
    }

    pub fn name(&self) -> String {
        self.terms.name()
    }

    pub fn mode(&self) -> TailMode {
        if self.envelopes.is_some() {
            TailMode::Envelope
        } else {
            TailMode::Exact
        }
    }

    pub fn contract(&self) -> TailContract {
        TailContract {
            mode: self.mode(),
            monotone_by_construction: self.envelopes.is_none() && self.terms.monotone_by_construction(),
            checked_to: self.checked_to,
        }
    }

    pub fn term(&self, n: u64) -> Result<Function> {
        self.terms.term(n)
    }

    /// `|f_n - f|` as a function.
    pub fn deviation(&self, n: u64) -> Result<Function> {
        self.terms.term(n)?.abs_diff(&self.limit)
    }

    /// `|f_n(x) - f(x)|`.
    pub fn eval_deviation(&self, n: u64, x: &Rational) -> Result<ExtendedRational> {
        let d = self.terms.eval_term(n, x)?.checked_sub(&self.limit.eval(x)?)?;
        Ok(d.abs())
    }

    /// `x ↦ |f_n(x) - f(x)|`, prepared once for many points.
    pub fn deviation_evaluator(&self, n: u64) -> Result<Evaluator> {
        let term = self.terms.evaluator(n)?;
        let limit = self.limit.clone();
        Ok(Box::new(move |x| Ok(term(x)?.checked_sub(&limit.eval(x)?)?.abs())))
    }

    /// The set where the index-`n` tail is within `t`.
    pub fn tail_lt(&self, n: u64, t: &Rational) -> Result<IntervalSet> {
        if let Some(env) = &self.envelopes {
            return Ok(env.term(n)?.level_lt(t));
        }
        if let Some(set) = self.terms.deviation_below(n, t) {
            return set;
        }
        Ok(self.deviation(n)?.level_lt(t))
    }

    pub fn breakpoints(&self, n: u64) -> Vec<Rational> {
        let mut pts = self.terms.breakpoints(n);
        pts.extend(self.limit.breakpoints());
        if let Some(env) = &self.envelopes {
            pts.extend(env.breakpoints(n));
        }
        pts.sort();
        pts.dedup();
        pts
    }
}

fn check_nonincreasing(seq: impl Fn(u64) -> Result<Function>, depth: u64) -> Result<()> {
    let mut prev = seq(1)?;
    for k in 1..depth {
        let next = seq(k + 1)?;
        if !prev.sub(&next)?.level_lt(&Rational::zero()).is_empty() {
            return Err(Error::MonotonicityViolation(k, k + 1));
        }
        prev = next;
    }
    Ok(())
}
