use num_bigint::BigInt;
use num_traits::Zero;

use super::step::StepFunction;
use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{dyadic, int, ExtendedRational, IntervalSet, Rational};

/// `min(n, ⌊2^n v⌋ / 2^n)` for `v ≥ 0`.
pub fn dyadic_level(v: &ExtendedRational, n: u32) -> Rational {
    let cap = int(n as i64);
    match v {
        ExtendedRational::Finite(r) => {
            let scale = Rational::from_integer(BigInt::from(1) << n as usize);
            let lvl = (r * &scale).floor() / scale;
            lvl.min(cap)
        }
        ExtendedRational::PosInfinity => cap,
        ExtendedRational::NegInfinity => Rational::zero(),
    }
}

/// `s_n = Σ_{j=1}^{n 2^n} 2^{-n} 𝒳_{L*(f, j/2^n)}`, built from `level_ge`
/// alone so it applies to any oracle. Only levels inside the range of `f`
/// are enumerated.
pub fn dyadic_simple_approx<F: MeasurableFn + ?Sized>(f: &F, n: u32) -> Result<StepFunction> {
    let domain = f.domain();
    let universe = domain.universe().clone();
    if !f.level_lt(&Rational::zero()).is_empty() {
        return Err(Error::NegativeFunction);
    }
    if domain.is_empty() {
        return Ok(StepFunction::from_atoms(universe, Vec::new()));
    }
    let step = dyadic(n);
    let top: u64 = (n as u64) << n;
    let threshold = |j: u64| Rational::from_integer(BigInt::from(j)) * &step;
    let level = |j: u64| f.level_ge(&threshold(j));

    // largest j whose level set is the whole domain, and largest j whose level set is nonempty
    let last = |pred: &dyn Fn(&IntervalSet) -> bool| {
        let (mut lo, mut hi) = (0u64, top);
        if pred(&level(top)) {
            return top;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if pred(&level(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let j_lo = last(&|s| s == domain);
    let j_hi = last(&|s| !s.is_empty());

    let mut atoms = Vec::new();
    let mut current = level(j_lo);
    for j in j_lo..=j_hi {
        let carrier = if j == top {
            current.clone()
        } else {
            let next = level(j + 1);
            let c = current.minus(&next);
            current = next;
            c
        };
        let value = ExtendedRational::Finite(threshold(j));
        atoms.extend(carrier.components().iter().map(|c| (c.clone(), value.clone())));
    }
    Ok(StepFunction::from_atoms(universe, atoms))
}
