use num_bigint::BigInt;
use num_traits::Zero;

use super::cert::BoundednessCert;
use super::search::least_index;
use crate::error::{Error, Result};
use crate::functions::{is_finite_ae, MeasurableFn};
use crate::interval::{int, Rational};

/// Finds the least integer `n` with `m(L(|f|, n)) < ε/2` and a closed
/// `K ⊆ domain ∖ L(|f|, n)` losing less than `ε/2` more.
pub fn fourth_principle<F: MeasurableFn + ?Sized>(f: &F, eps: &Rational, cap: u64) -> Result<BoundednessCert> {
    if eps <= &Rational::zero() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    let (finite, bad) = is_finite_ae(f);
    if !finite {
        return Err(Error::NotFiniteAE(bad));
    }
    let half = eps / int(2);
    let level = |n: u64| f.abs_level_gt(&Rational::from_integer(BigInt::from(n)));
    let n = least_index("bound search", 1, cap, |n| Ok(level(n).measure() < half))?;
    let bounded = f.domain().minus(&level(n));
    let k = bounded.closed_subset_within(&half)?;
    let loss = f.domain().minus(&k).measure();
    Ok(BoundednessCert { k, bound: Rational::from_integer(BigInt::from(n)), epsilon: eps.clone(), loss })
}
