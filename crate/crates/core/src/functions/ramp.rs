use num_traits::Signed;

use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{ExtendedRational, Interval, IntervalSet, Rational};

/// `f(x) = c/(x - p)` on `(p, q]`: finite everywhere, unbounded near the pole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalRamp {
    pole: Rational,
    coef: Rational,
    right: Rational,
    domain: IntervalSet,
}

impl ReciprocalRamp {
    pub fn new(pole: Rational, coef: Rational, right: Rational, universe: Interval) -> Result<Self> {
        if !coef.is_positive() {
            return Err(Error::KindMismatch(format!("reciprocal coefficient must be positive, got {coef}")));
        }
        let interval = Interval::new(pole.clone(), right.clone(), false, true)?;
        let domain = IntervalSet::from_interval(interval, universe)?;
        Ok(ReciprocalRamp { pole, coef, right, domain })
    }

    pub fn pole(&self) -> &Rational {
        &self.pole
    }

    pub fn coef(&self) -> &Rational {
        &self.coef
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        Self::new(self.pole.clone(), &self.coef * c, self.right.clone(), self.domain.universe().clone())
    }

    /// Exact Lipschitz constant on `[a, q]` for `a > p`: `c/(a-p)^2`.
    pub fn lipschitz_from(&self, a: &Rational) -> Option<Rational> {
        let d = a - &self.pole;
        d.is_positive().then(|| &self.coef / (&d * &d))
    }

    fn level(&self, t: &Rational, inclusive: bool) -> IntervalSet {
        let universe = self.domain.universe().clone();
        if !t.is_positive() {
            return self.domain.clone();
        }
        // c/(x-p) > t  <=>  x < p + c/t
        let cut = &self.pole + &self.coef / t;
        let iv = if cut > self.right {
            Some(self.domain.components()[0].clone())
        } else {
            Interval::try_new(self.pole.clone(), cut, false, inclusive)
        };
        IntervalSet::normalize(iv.into_iter().collect(), universe).expect("inside the domain")
    }
}

impl MeasurableFn for ReciprocalRamp {
    fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    fn level_gt(&self, t: &Rational) -> IntervalSet {
        self.level(t, false)
    }

    fn level_ge(&self, t: &Rational) -> IntervalSet {
        self.level(t, true)
    }

    fn plus_infinity_set(&self) -> IntervalSet {
        IntervalSet::empty(self.domain.universe().clone())
    }

    fn minus_infinity_set(&self) -> IntervalSet {
        IntervalSet::empty(self.domain.universe().clone())
    }

    fn eval(&self, x: &Rational) -> Result<ExtendedRational> {
        if !self.domain.contains(x) {
            return Err(Error::PointOutsideDomain(x.to_string()));
        }
        Ok(ExtendedRational::Finite(&self.coef / (x - &self.pole)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{int, rat};

    fn one_over_x() -> ReciprocalRamp {
        ReciprocalRamp::new(int(0), int(1), int(1), Interval::closed(int(0), int(1)).unwrap()).unwrap()
    }

    #[test]
    fn values_and_levels() {
        let f = one_over_x();
        assert_eq!(f.eval(&rat(1, 4)).unwrap(), int(4).into());
        assert!(f.eval(&int(0)).is_err());
        assert_eq!(f.level_gt(&int(21)).to_string(), "(0,1/21)");
        assert_eq!(f.level_ge(&int(21)).to_string(), "(0,1/21]");
        assert_eq!(f.level_gt(&int(1)).to_string(), "(0,1)");
        assert_eq!(f.level_ge(&int(1)).to_string(), "(0,1]");
        assert_eq!(f.level_gt(&rat(1, 2)).to_string(), "(0,1]");
        assert_eq!(f.level_gt(&int(-3)).to_string(), "(0,1]");
    }

    #[test]
    fn lipschitz_constant() {
        assert_eq!(one_over_x().lipschitz_from(&rat(1, 21)), Some(int(441)));
        assert_eq!(one_over_x().lipschitz_from(&int(0)), None);
    }
}
