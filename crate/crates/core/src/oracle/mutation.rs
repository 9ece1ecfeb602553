use num_traits::One;
use serde::{Deserialize, Serialize};

use super::report::VerificationReport;
use super::verify::{verify, Inputs, VerifyOptions};
use crate::error::Result;
use crate::functions::MeasurableFn;
use crate::interval::{IntervalSet, Rational};
use crate::principles::{Certificate, ContinuityWitness};

/// Ways of corrupting a certificate that the verifier must notice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Exchange `K` and `F`.
    SwapKF,
    /// Add the closure of the largest piece of `domain ∖ K` to `K`,
    /// recomputing the loss so only the substantive claim is wrong.
    GrowK,
    /// Set `ε` to the loss, so `loss < ε` no longer holds.
    TightenEpsilon,
    /// Claim a bound one less.
    LowerBound,
    /// Replace two neighbouring components of different value by their hull.
    MergeComponents,
    /// Lower the first `ν(m)` that exceeds its predecessor by one.
    DecrementNu,
    /// Claim one more rung of the ladder at the last index.
    RaiseClaims,
    DecrementIndex,
    IncrementIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationOutcome {
    Rejected,
    Survived,
    /// The mutation leaves this certificate unchanged.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationResult {
    pub mutation: Mutation,
    pub outcome: MutationOutcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

pub fn mutation_catalogue(cert: &Certificate) -> Vec<Mutation> {
    use Mutation::*;
    match cert {
        Certificate::Decomposition(_) => vec![SwapKF, GrowK, TightenEpsilon],
        Certificate::Boundedness(_) => vec![LowerBound, GrowK, TightenEpsilon],
        Certificate::Lusin(_) => vec![MergeComponents, GrowK, TightenEpsilon],
        Certificate::Egoroff(_) => vec![DecrementNu, RaiseClaims, GrowK],
        Certificate::Dini(_) => vec![DecrementIndex, IncrementIndex, TightenEpsilon],
    }
}

fn domain_of(inputs: &Inputs) -> &IntervalSet {
    match inputs {
        Inputs::Set(e) => e,
        Inputs::Function(f) => f.domain(),
        Inputs::Sequence(s) => s.domain(),
        Inputs::Dini { limit, .. } => limit.domain(),
    }
}

fn grown(k: &IntervalSet, domain: &IntervalSet) -> Option<IntervalSet> {
    let rest = domain.minus(k);
    let widest = rest.components().iter().max_by(|a, b| a.length().cmp(&b.length()).then(b.lo().cmp(a.lo())))?;
    let add = IntervalSet::from_interval(widest.closure(), k.universe().clone()).ok()?;
    Some(k.or(&add))
}

/// The mutated certificate, or `None` when the mutation does not apply.
pub fn mutate(cert: &Certificate, mutation: Mutation, inputs: &Inputs) -> Option<Certificate> {
    use Mutation::*;
    let domain = domain_of(inputs);
    let out = match (cert, mutation) {
        (Certificate::Decomposition(c), SwapKF) => {
            let mut m = c.clone();
            std::mem::swap(&mut m.k, &mut m.f);
            m.loss = m.f.measure();
            m.into()
        }
        (Certificate::Decomposition(c), GrowK) => {
            let mut m = c.clone();
            m.k = m.k.or(&m.f.closure());
            m.into()
        }
        (Certificate::Decomposition(c), TightenEpsilon) => {
            let mut m = c.clone();
            m.epsilon = m.loss.clone();
            m.into()
        }
        (Certificate::Boundedness(c), LowerBound) => {
            let mut m = c.clone();
            m.bound -= Rational::one();
            m.into()
        }
        (Certificate::Boundedness(c), GrowK) => {
            let mut m = c.clone();
            m.k = grown(&c.k, domain)?;
            m.loss = domain.minus(&m.k).measure();
            m.into()
        }
        (Certificate::Boundedness(c), TightenEpsilon) => {
            let mut m = c.clone();
            m.epsilon = m.loss.clone();
            m.into()
        }
        (Certificate::Lusin(c), MergeComponents) => {
            if !matches!(c.continuity_witness, ContinuityWitness::Separation { min_gap: Some(_) }) {
                return None;
            }
            let f = match inputs {
                Inputs::Function(crate::functions::Function::Step(s)) => s,
                _ => return None,
            };
            let comps = c.k.components();
            let i = (1..comps.len()).find(|&i| f.value_on(&comps[i - 1]) != f.value_on(&comps[i]))?;
            let hull = crate::Interval::closed(comps[i - 1].lo().clone(), comps[i].hi().clone()).ok()?;
            let mut m = c.clone();
            m.k = c.k.or(&IntervalSet::from_interval(hull, c.k.universe().clone()).ok()?);
            m.loss = domain.minus(&m.k).measure();
            m.into()
        }
        (Certificate::Lusin(c), GrowK) => {
            let mut m = c.clone();
            m.k = grown(&c.k, domain)?;
            m.loss = domain.minus(&m.k).measure();
            m.into()
        }
        (Certificate::Lusin(c), TightenEpsilon) => {
            let mut m = c.clone();
            m.epsilon = m.loss.clone();
            m.into()
        }
        (Certificate::Egoroff(c), DecrementNu) => {
            let t = &c.index_table;
            let i = (0..t.len()).find(|&i| t[i] > if i == 0 { 1 } else { t[i - 1] })?;
            let mut m = c.clone();
            m.index_table[i] -= 1;
            m.into()
        }
        (Certificate::Egoroff(c), RaiseClaims) => {
            let mut m = c.clone();
            m.index_table.push(*c.index_table.last()?);
            m.ladder += 1;
            m.into()
        }
        (Certificate::Egoroff(c), GrowK) => {
            let mut m = c.clone();
            m.k = grown(&c.k, domain)?;
            m.loss = domain.minus(&m.k).measure();
            m.into()
        }
        (Certificate::Dini(c), DecrementIndex) => {
            if c.index <= 1 {
                return None;
            }
            let mut m = c.clone();
            m.index -= 1;
            if let Some(t) = &mut m.cover_trace {
                t.pop();
            }
            m.into()
        }
        (Certificate::Dini(c), IncrementIndex) => {
            let mut m = c.clone();
            m.index += 1;
            if let Some(t) = &mut m.cover_trace {
                t.push(c.k.clone());
            }
            m.into()
        }
        (Certificate::Dini(c), TightenEpsilon) => {
            // shrink ε to the largest deviation actually present at the index
            let Inputs::Dini { terms, limit } = inputs else { return None };
            let h = limit.abs_diff(&terms.term(c.index).ok()?).ok()?.restrict(&c.k).ok()?;
            let sup = crate::functions::sup_on(&h, &c.k).ok()?;
            let mut m = c.clone();
            m.epsilon = sup.finite()?.clone();
            if m.epsilon <= num_traits::Zero::zero() {
                return None;
            }
            m.into()
        }
        _ => return None,
    };
    (&out != cert).then_some(out)
}

/// Applies every catalogued mutation and verifies the result.
pub fn mutation_suite(cert: &Certificate, inputs: &Inputs, options: &VerifyOptions) -> Result<Vec<MutationResult>> {
    mutation_catalogue(cert)
        .into_iter()
        .map(|mutation| {
            Ok(match mutate(cert, mutation, inputs) {
                None => MutationResult { mutation, outcome: MutationOutcome::NotApplicable, report: None },
                Some(bad) => {
                    let report = verify(&bad, inputs, options)?;
                    let outcome = if report.passed() { MutationOutcome::Survived } else { MutationOutcome::Rejected };
                    MutationResult { mutation, outcome, report: Some(report) }
                }
            })
        })
        .collect()
}
