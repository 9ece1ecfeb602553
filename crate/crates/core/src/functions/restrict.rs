use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{ExtendedRational, IntervalSet, Rational};

/// `f` viewed on `domain(f) ∩ set`.
#[derive(Debug)]
pub struct Restricted<'a, F: MeasurableFn + ?Sized> {
    inner: &'a F,
    domain: IntervalSet,
}

impl<'a, F: MeasurableFn + ?Sized> Restricted<'a, F> {
    pub fn new(inner: &'a F, set: &IntervalSet) -> Result<Self> {
        let domain = inner.domain().intersect(set)?;
        Ok(Restricted { inner, domain })
    }
}

impl<F: MeasurableFn + ?Sized> MeasurableFn for Restricted<'_, F> {
    fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    fn level_gt(&self, t: &Rational) -> IntervalSet {
        self.inner.level_gt(t).and(&self.domain)
    }

    fn level_ge(&self, t: &Rational) -> IntervalSet {
        self.inner.level_ge(t).and(&self.domain)
    }

    fn plus_infinity_set(&self) -> IntervalSet {
        self.inner.plus_infinity_set().and(&self.domain)
    }

    fn minus_infinity_set(&self) -> IntervalSet {
        self.inner.minus_infinity_set().and(&self.domain)
    }

    fn eval(&self, x: &Rational) -> Result<ExtendedRational> {
        if !self.domain.contains(x) {
            return Err(Error::PointOutsideDomain(x.to_string()));
        }
        self.inner.eval(x)
    }
}
