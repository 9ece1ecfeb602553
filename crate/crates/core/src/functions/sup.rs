use num_traits::{One, Zero};

use super::function::Function;
use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{int, overlaps, ExtendedRational, Interval, IntervalSet, Rational};

/// Exact supremum of `f` over `set ⊆ domain(f)`; `-∞` for the empty set.
pub fn sup_on(f: &Function, set: &IntervalSet) -> Result<ExtendedRational> {
    if !set.is_subset_of(f.domain())? {
        return Err(Error::DomainMismatch);
    }
    if set.is_empty() {
        return Ok(ExtendedRational::NegInfinity);
    }
    let comps = set.components();
    let best = match f {
        Function::Step(s) => {
            let atoms: Vec<(&Interval, &ExtendedRational)> = s.atoms().collect();
            overlaps(&atoms, |a| a.0, comps, |k| k).into_iter().map(|(i, _, _)| atoms[i].1.clone()).max()
        }
        Function::Linear(p) => overlaps(p.pieces(), |q| &q.interval, comps, |k| k)
            .into_iter()
            .map(|(i, _, x)| {
                let q = &p.pieces()[i];
                ExtendedRational::Finite(q.at(x.lo()).max(q.at(x.hi())))
            })
            .max(),
        Function::Reciprocal(r) => {
            let first = &comps[0];
            Some(if first.lo() == r.pole() {
                ExtendedRational::PosInfinity
            } else {
                ExtendedRational::Finite(r.coef() / (first.lo() - r.pole()))
            })
        }
    };
    Ok(best.unwrap_or(ExtendedRational::NegInfinity))
}

/// Brackets `sup_{set} f` to within `tol` using only `level_gt`: returns
/// `(lo, hi)` with `lo < sup ≤ hi`. Works for any level-set oracle.
pub fn sup_bracket<F: MeasurableFn + ?Sized>(
    f: &F,
    set: &IntervalSet,
    tol: &Rational,
) -> Result<(ExtendedRational, ExtendedRational)> {
    let on_set = |t: &Rational| -> Result<bool> { Ok(!f.level_gt(t).intersect(set)?.is_empty()) };
    if set.is_empty() {
        return Ok((ExtendedRational::NegInfinity, ExtendedRational::NegInfinity));
    }
    if !f.plus_infinity_set().intersect(set)?.is_empty() {
        return Ok((ExtendedRational::PosInfinity, ExtendedRational::PosInfinity));
    }
    const MAX_DOUBLINGS: usize = 256;
    let mut hi = Rational::one();
    let mut found = false;
    for _ in 0..MAX_DOUBLINGS {
        if !on_set(&hi)? {
            found = true;
            break;
        }
        hi *= int(2);
    }
    if !found {
        return Ok((ExtendedRational::Finite(hi), ExtendedRational::PosInfinity));
    }
    let mut lo = -Rational::one();
    found = false;
    for _ in 0..MAX_DOUBLINGS {
        if on_set(&lo)? {
            found = true;
            break;
        }
        lo *= int(2);
    }
    if !found {
        return Ok((ExtendedRational::NegInfinity, ExtendedRational::Finite(lo)));
    }
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / int(2);
        if on_set(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(!tol.is_zero());
    Ok((ExtendedRational::Finite(lo), ExtendedRational::Finite(hi)))
}
