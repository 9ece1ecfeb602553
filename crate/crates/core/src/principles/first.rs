use num_traits::Zero;

use super::cert::DecompositionCert;
use crate::error::{Error, Result};
use crate::interval::{IntervalSet, Rational};

/// `E = K ∪ F` with `K = closed_subset_within(E, ε)` and `F = E ∖ K`.
pub fn principle1_decompose(e: &IntervalSet, eps: &Rational) -> Result<DecompositionCert> {
    if eps <= &Rational::zero() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    let k = e.closed_subset_within(eps)?;
    let f = e.minus(&k);
    let loss = f.measure();
    Ok(DecompositionCert { k, f, epsilon: eps.clone(), loss })
}
