use num_traits::Zero;

use super::cert::{DiniAlgorithm, DiniCert};
use crate::error::{Error, Result};
use crate::functions::{sup_on, Function, MeasurableFn, TermFamily};
use crate::interval::{ExtendedRational, IntervalSet, Rational};

/// Least `m` with `|f - f_m| < ε` on the closed set `k`, for continuous
/// terms whose distance to the continuous limit decreases monotonically.
///
/// `Sup` compares `sup_K h_m` with `ε`; `Cover` waits until
/// `A_m = {x ∈ K : h_m(x) < ε}` is all of `K` and records every `A_n`.
/// Monotonicity `h_n ≥ h_{n+1}` on `K` is checked exactly up to the index
/// returned.
pub fn dini_index(
    terms: &dyn TermFamily,
    limit: &Function,
    k: &IntervalSet,
    eps: &Rational,
    algorithm: DiniAlgorithm,
    cap: u64,
) -> Result<DiniCert> {
    if eps <= &Rational::zero() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    if !k.is_closed() {
        return Err(Error::InputMismatch(format!("{k} is not closed")));
    }
    if !k.is_subset_of(limit.domain())? {
        return Err(Error::DomainMismatch);
    }
    if !limit.is_continuous_on(k) {
        return Err(Error::NotContinuousKind(limit.kind().into()));
    }
    let mut trace = Vec::new();
    let mut prev: Option<Function> = None;
    for n in 1..=cap {
        let term = terms.term(n)?;
        if !term.is_continuous_on(k) {
            return Err(Error::NotContinuousKind(term.kind().into()));
        }
        let h = limit.abs_diff(&term)?.restrict(k)?;
        if let Some(p) = &prev {
            if !p.sub(&h)?.level_lt(&Rational::zero()).is_empty() {
                return Err(Error::NonMonotoneSequence(n));
            }
        }
        let done = match algorithm {
            DiniAlgorithm::Sup => sup_on(&h, k)? < ExtendedRational::Finite(eps.clone()),
            DiniAlgorithm::Cover => {
                let a = h.level_lt(eps);
                let covered = &a == k;
                trace.push(a);
                covered
            }
        };
        if done {
            return Ok(DiniCert {
                k: k.clone(),
                epsilon: eps.clone(),
                index: n,
                algorithm,
                cover_trace: (algorithm == DiniAlgorithm::Cover).then_some(trace),
            });
        }
        prev = Some(h);
    }
    Err(Error::IterationCapExceeded { what: "Dini index".into(), cap })
}
