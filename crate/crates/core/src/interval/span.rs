use std::fmt;

use num_traits::Zero;

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// A nonempty bounded interval with independent endpoint flags.
///
/// Degenerate intervals are closed singletons `[a,a]`; the empty set is not
/// an `Interval`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        Self::try_new(lo, hi, lo_closed, hi_closed).ok_or_else(|| {
            Error::InvalidInterval("lower endpoint must not exceed upper endpoint; a degenerate interval must be closed".into())
        })
    }

    /// Returns `None` when the described set is empty.
    pub fn try_new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        if lo < hi || (lo == hi && lo_closed && hi_closed) {
            Some(Interval { lo, hi, lo_closed, hi_closed })
        } else {
            None
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x, lo_closed: true, hi_closed: true }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_closed(&self) -> bool {
        self.lo_closed && self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn closure(&self) -> Interval {
        Interval { lo: self.lo.clone(), hi: self.hi.clone(), lo_closed: true, hi_closed: true }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.above_lo(x) && self.below_hi(x)
    }

    fn above_lo(&self, x: &Rational) -> bool {
        &self.lo < x || (&self.lo == x && self.lo_closed)
    }

    fn below_hi(&self, x: &Rational) -> bool {
        x < &self.hi || (x == &self.hi && self.hi_closed)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let lo_ok = other.lo < self.lo || (other.lo == self.lo && (other.lo_closed || !self.lo_closed));
        let hi_ok = self.hi < other.hi || (other.hi == self.hi && (other.hi_closed || !self.hi_closed));
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::try_new(lo, hi, lo_closed, hi_closed)
    }

    /// `{x ∈ self : x > r}` (or `x ≥ r` when `inclusive`).
    pub fn clip_below(&self, r: &Rational, inclusive: bool) -> Option<Interval> {
        if r < &self.lo {
            return Some(self.clone());
        }
        if r == &self.lo {
            return Interval::try_new(self.lo.clone(), self.hi.clone(), self.lo_closed && inclusive, self.hi_closed);
        }
        Interval::try_new(r.clone(), self.hi.clone(), inclusive, self.hi_closed)
    }

    /// `{x ∈ self : x < r}` (or `x ≤ r` when `inclusive`).
    pub fn clip_above(&self, r: &Rational, inclusive: bool) -> Option<Interval> {
        if r > &self.hi {
            return Some(self.clone());
        }
        if r == &self.hi {
            return Interval::try_new(self.lo.clone(), self.hi.clone(), self.lo_closed, self.hi_closed && inclusive);
        }
        Interval::try_new(self.lo.clone(), r.clone(), self.lo_closed, inclusive)
    }

    /// `true` when `self` ends strictly before `other` ends, treating an
    /// open right endpoint as ending before a closed one at the same place.
    pub(crate) fn ends_before(&self, other: &Interval) -> bool {
        (&self.hi, self.hi_closed) < (&other.hi, other.hi_closed)
    }

    /// Distance between the closures; zero when they touch or overlap.
    pub fn gap_to(&self, other: &Interval) -> Rational {
        let (a, b) = if self.lo <= other.lo { (self, other) } else { (other, self) };
        let d = &b.lo - &a.hi;
        if d < Rational::zero() {
            Rational::zero()
        } else {
            d
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Every nonempty intersection between two lists of disjoint intervals,
/// each sorted left to right, as `(i, j, a[i] ∩ b[j])`.
pub(crate) fn overlaps<A, B>(
    a: &[A],
    fa: impl Fn(&A) -> &Interval,
    b: &[B],
    fb: impl Fn(&B) -> &Interval,
) -> Vec<(usize, usize, Interval)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let (x, y) = (fa(&a[i]), fb(&b[j]));
        if let Some(z) = x.intersect(y) {
            out.push((i, j, z));
        }
        if x.ends_before(y) {
            i += 1;
        } else if y.ends_before(x) {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}
