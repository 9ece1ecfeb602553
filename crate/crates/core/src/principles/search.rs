use crate::error::{Error, Result};

/// Least `n` in `start..=cap` with `pred(n)`, for a predicate that stays
/// true once it holds. Gallops, then bisects.
pub(crate) fn least_index(
    what: &str,
    start: u64,
    cap: u64,
    mut pred: impl FnMut(u64) -> Result<bool>,
) -> Result<u64> {
    let exceeded = || Error::IterationCapExceeded { what: what.to_string(), cap };
    if start > cap {
        return Err(exceeded());
    }
    if pred(start)? {
        return Ok(start);
    }
    let mut lo = start; // pred(lo) is false
    let mut step = 1u64;
    let hi = loop {
        let probe = lo.saturating_add(step).min(cap);
        if pred(probe)? {
            break probe;
        }
        if probe == cap {
            return Err(exceeded());
        }
        lo = probe;
        step = step.saturating_mul(2);
    };
    let mut hi = hi;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_least_index() {
        for target in 1..200u64 {
            let got = least_index("t", 1, 1000, |n| Ok(n >= target)).unwrap();
            assert_eq!(got, target);
        }
        assert_eq!(least_index("t", 5, 1000, |n| Ok(n >= 3)).unwrap(), 5);
        assert!(matches!(least_index("t", 1, 50, |n| Ok(n >= 51)), Err(Error::IterationCapExceeded { .. })));
        assert_eq!(least_index("t", 1, 50, |n| Ok(n >= 50)).unwrap(), 50);
    }
}
