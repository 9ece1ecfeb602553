use super::grid::Grid;
use crate::error::Result;
use crate::functions::{Function, MeasurableFn, TermFamily};
use crate::interval::{ExtendedRational, Rational};

/// Least `n ≤ n_max` whose largest sampled `|f_n - f|` over `grid` is below
/// `eps`, evaluating pointwise only. `None` when no such `n` exists.
pub fn brute_force_min_index(
    terms: &dyn TermFamily,
    limit: &Function,
    grid: &Grid,
    eps: &Rational,
    n_max: u64,
) -> Result<Option<u64>> {
    let eps = ExtendedRational::Finite(eps.clone());
    for n in 1..=n_max {
        let term = terms.evaluator(n)?;
        let (worst, _) = grid.max_of(|x| Ok(term(x)?.checked_sub(&limit.eval(x)?)?.abs()))?;
        if worst < eps {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{ConstantFamily, RampSpike, XOverN};
    use crate::interval::{int, rat, Interval, IntervalSet};

    fn unit() -> Interval {
        Interval::closed(int(0), int(1)).unwrap()
    }

    #[test]
    fn closed_form_indices() {
        let k = IntervalSet::full(unit());
        let grid = Grid::over(&k, &Grid::default_density(&unit()), &[]);
        let x = XOverN::new(int(0), int(1), unit()).unwrap();
        assert_eq!(brute_force_min_index(&x, &x.limit(), &grid, &rat(1, 10), 100).unwrap(), Some(11));
        assert_eq!(brute_force_min_index(&x, &x.limit(), &grid, &rat(1, 10), 10).unwrap(), None);

        let c = ConstantFamily(x.limit());
        assert_eq!(brute_force_min_index(&c, &x.limit(), &grid, &rat(1, 10), 5).unwrap(), Some(1));

        let k = IntervalSet::parse("[0,9/10]", unit()).unwrap();
        let grid = Grid::over(&k, &Grid::default_density(&unit()), &[]);
        let spike = RampSpike::new(int(0), int(1), unit()).unwrap();
        let zero = Function::zero(IntervalSet::full(unit()));
        assert_eq!(brute_force_min_index(&spike, &zero, &grid, &rat(1, 100), 100).unwrap(), Some(10));
    }
}
