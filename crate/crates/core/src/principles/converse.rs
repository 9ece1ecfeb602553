use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cert::{BoundednessCert, DecompositionCert};
use crate::error::{Error, Result};
use crate::functions::{Function, MeasurableFn};
use crate::interval::{serde_rational, IntervalSet, Rational};

/// Given decompositions of `E` at several accuracies, the gap between
/// `m(E)` and the largest closed part found. It is below every `ε` used.
pub fn decomposition_converse_check(e: &IntervalSet, certs: &[DecompositionCert]) -> Result<Rational> {
    let mut best = Rational::zero();
    for (i, c) in certs.iter().enumerate() {
        let exact = c.k.is_closed() && c.k.is_subset_of(e)? && c.k.union(&c.f)? == *e;
        let loss = e.minus(&c.k).measure();
        if !exact || loss >= c.epsilon {
            return Err(Error::BudgetViolated { m: i + 1, loss });
        }
        best = best.max(c.k.measure());
    }
    Ok(e.measure() - best)
}

/// For a family `K_1, …, K_M` with `m(domain ∖ K_m) < 1/m` on which
/// convergence was shown uniform, returns `m(domain ∖ ∪ K_m)`, an upper
/// bound for the set where the sequence fails to converge. Only the full
/// infinite family forces this to zero.
pub fn egoroff_converse_check(domain: &IntervalSet, family: &[(IntervalSet, bool)]) -> Result<Rational> {
    let mut union = IntervalSet::empty(domain.universe().clone());
    for (i, (k, uniform)) in family.iter().enumerate() {
        let m = i + 1;
        if !uniform {
            return Err(Error::WitnessMissing);
        }
        let loss = domain.minus(k).measure();
        if loss >= Rational::new(1.into(), m.into()) {
            return Err(Error::BudgetViolated { m, loss });
        }
        union = union.or(k);
    }
    Ok(domain.minus(&union).measure())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LusinConverseRow {
    #[serde(with = "serde_rational")]
    pub threshold: Rational,
    /// `L*(f,t) ∩ K` is closed.
    pub closed: bool,
    /// `m(L*(f,t) ∖ K)`.
    #[serde(with = "serde_rational")]
    pub outside: Rational,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LusinConverseReport {
    /// `m(domain ∖ K)`, the bound every `outside` must respect.
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    pub rows: Vec<LusinConverseRow>,
}

impl LusinConverseReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.closed && r.within_bound)
    }
}

/// With `f` continuous on the closed set `k`, each `L*(f,t)` splits as a
/// closed part inside `k` plus a part of measure at most `m(domain ∖ k)`.
pub fn lusin_converse_check(f: &Function, k: &IntervalSet, thresholds: &[Rational]) -> Result<LusinConverseReport> {
    if !k.is_closed() || !k.is_subset_of(f.domain())? || !f.is_continuous_on(k) {
        return Err(Error::WitnessMissing);
    }
    let bound = f.domain().minus(k).measure();
    let rows = thresholds
        .iter()
        .map(|t| {
            let level = f.level_ge(t);
            let outside = level.minus(k).measure();
            LusinConverseRow {
                threshold: t.clone(),
                closed: level.and(k).is_closed(),
                within_bound: outside <= bound,
                outside,
            }
        })
        .collect();
    Ok(LusinConverseReport { bound, rows })
}

/// The infinity set of `f` misses every `K` on which `|f|` is bounded, so its
/// measure is at most the smallest loss among certificates that check out.
pub fn fourth_converse_bound<F: MeasurableFn + ?Sized>(f: &F, certs: &[BoundednessCert]) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for c in certs {
        if !c.k.is_subset_of(f.domain())? || !f.abs_level_gt(&c.bound).and(&c.k).is_empty() {
            return Err(Error::WitnessMissing);
        }
        let loss = f.domain().minus(&c.k).measure();
        best = Some(best.map_or(loss.clone(), |b| b.min(loss)));
    }
    best.ok_or(Error::WitnessMissing)
}
