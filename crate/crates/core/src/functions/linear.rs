use num_traits::{Signed, Zero};

use super::step::StepFunction;
use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{overlaps, ExtendedRational, Interval, IntervalSet, Rational};

/// `f(x) = slope·x + offset` on `interval`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPiece {
    pub interval: Interval,
    pub slope: Rational,
    pub offset: Rational,
}

impl LinearPiece {
    pub fn new(interval: Interval, slope: Rational, offset: Rational) -> Self {
        LinearPiece { interval, slope, offset }
    }

    pub fn at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.offset
    }

    fn same_line(&self, other: &LinearPiece) -> bool {
        self.slope == other.slope && self.offset == other.offset
    }

    fn with_interval(&self, interval: Interval) -> LinearPiece {
        LinearPiece { interval, slope: self.slope.clone(), offset: self.offset.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Cmp {
    Gt,
    Ge,
    Lt,
    Le,
}

impl Cmp {
    fn holds(self, v: &Rational) -> bool {
        match self {
            Cmp::Gt => v.is_positive(),
            Cmp::Ge => !v.is_negative(),
            Cmp::Lt => v.is_negative(),
            Cmp::Le => !v.is_positive(),
        }
    }
}

/// `{x ∈ interval : slope·x + offset ⋈ 0}`.
pub(crate) fn restrict_linear(interval: &Interval, slope: &Rational, offset: &Rational, cmp: Cmp) -> Option<Interval> {
    if slope.is_zero() {
        return cmp.holds(offset).then(|| interval.clone());
    }
    let root = -offset / slope;
    let inclusive = matches!(cmp, Cmp::Ge | Cmp::Le);
    let upward = matches!(cmp, Cmp::Gt | Cmp::Ge) == slope.is_positive();
    if upward {
        interval.clip_below(&root, inclusive)
    } else {
        interval.clip_above(&root, inclusive)
    }
}

/// Piecewise affine function on a finite union of intervals. Pieces are
/// disjoint; jumps between adjacent pieces are allowed (see
/// [`PiecewiseLinear::is_continuous_on`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    domain: IntervalSet,
    pieces: Vec<LinearPiece>,
}

impl PiecewiseLinear {
    pub fn new(universe: Interval, mut pieces: Vec<LinearPiece>) -> Result<Self> {
        pieces.sort_by(|a, b| a.interval.lo().cmp(b.interval.lo()).then(b.interval.lo_closed().cmp(&a.interval.lo_closed())));
        for w in pieces.windows(2) {
            if w[0].interval.intersect(&w[1].interval).is_some() || w[1].interval.lo() < w[0].interval.hi() {
                return Err(Error::InvalidInterval(format!(
                    "linear pieces overlap at {} and {}",
                    w[0].interval, w[1].interval
                )));
            }
        }
        let domain = IntervalSet::normalize(pieces.iter().map(|p| p.interval.clone()).collect(), universe)?;
        Ok(Self::canonical(domain, pieces))
    }

    pub fn affine(domain: Interval, universe: Interval, slope: Rational, offset: Rational) -> Result<Self> {
        Self::new(universe, vec![LinearPiece::new(domain, slope, offset)])
    }

    pub fn from_step(step: &StepFunction) -> Result<Self> {
        let pieces = step
            .atoms()
            .map(|(iv, v)| match v {
                ExtendedRational::Finite(c) => Ok(LinearPiece::new(iv.clone(), Rational::zero(), c.clone())),
                _ => Err(Error::UndefinedInfinityArithmetic("infinite step value in piecewise-linear arithmetic")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::canonical(step.domain().clone(), pieces))
    }

    /// Sorted, disjoint pieces; merges touching pieces on the same line.
    fn canonical(domain: IntervalSet, mut pieces: Vec<LinearPiece>) -> Self {
        pieces.sort_by(|a, b| a.interval.lo().cmp(b.interval.lo()).then(b.interval.lo_closed().cmp(&a.interval.lo_closed())));
        let mut out: Vec<LinearPiece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = out.last_mut() {
                let touching = last.interval.hi() == p.interval.lo()
                    && (last.interval.hi_closed() != p.interval.lo_closed());
                if touching && last.same_line(&p) {
                    let iv = Interval::new(
                        last.interval.lo().clone(),
                        p.interval.hi().clone(),
                        last.interval.lo_closed(),
                        p.interval.hi_closed(),
                    )
                    .expect("merge of touching pieces");
                    last.interval = iv;
                    continue;
                }
            }
            out.push(p);
        }
        PiecewiseLinear { domain, pieces: out }
    }

    pub fn pieces(&self) -> &[LinearPiece] {
        &self.pieces
    }

    pub fn piece_at(&self, x: &Rational) -> Option<&LinearPiece> {
        // `[a,b]` and `(b,c]` both start at or before `b`
        let idx = self.pieces.partition_point(|p| p.interval.lo() <= x);
        self.pieces[idx.saturating_sub(2)..idx].iter().rev().find(|p| p.interval.contains(x))
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> =
            self.pieces.iter().flat_map(|p| [p.interval.lo().clone(), p.interval.hi().clone()]).collect();
        v.dedup();
        v
    }

    fn level(&self, t: &Rational, cmp: Cmp) -> IntervalSet {
        let comps = self
            .pieces
            .iter()
            .filter_map(|p| restrict_linear(&p.interval, &p.slope, &(&p.offset - t), cmp))
            .collect();
        IntervalSet::normalize(comps, self.domain.universe().clone()).expect("pieces lie in the universe")
    }

    fn refine<'a>(&'a self, other: &'a PiecewiseLinear) -> Result<Vec<(Interval, &'a LinearPiece, &'a LinearPiece)>> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            if let Some(x) = a[i].interval.intersect(&b[j].interval) {
                out.push((x, &a[i], &b[j]));
            }
            if a[i].interval.ends_before(&b[j].interval) {
                i += 1;
            } else if b[j].interval.ends_before(&a[i].interval) {
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PiecewiseLinear) -> Result<Self> {
        let pieces = self
            .refine(other)?
            .into_iter()
            .map(|(iv, p, q)| LinearPiece::new(iv, &p.slope + &q.slope, &p.offset + &q.offset))
            .collect();
        Ok(Self::canonical(self.domain.clone(), pieces))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| LinearPiece::new(p.interval.clone(), &p.slope * c, &p.offset * c))
            .collect();
        Self::canonical(self.domain.clone(), pieces)
    }

    pub fn sub(&self, other: &PiecewiseLinear) -> Result<Self> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Pointwise max (or min), splitting refined cells at crossings.
    pub fn extremum(&self, other: &PiecewiseLinear, take_max: bool) -> Result<Self> {
        let mut pieces = Vec::new();
        for (iv, p, q) in self.refine(other)? {
            let ds = &p.slope - &q.slope;
            let doff = &p.offset - &q.offset;
            let (first_wins, second_wins) = if take_max { (Cmp::Ge, Cmp::Lt) } else { (Cmp::Le, Cmp::Gt) };
            if let Some(x) = restrict_linear(&iv, &ds, &doff, first_wins) {
                pieces.push(p.with_interval(x));
            }
            if let Some(x) = restrict_linear(&iv, &ds, &doff, second_wins) {
                pieces.push(q.with_interval(x));
            }
        }
        Ok(Self::canonical(self.domain.clone(), pieces))
    }

    pub fn abs(&self) -> Self {
        self.extremum(&self.scale(&-Rational::from_integer(1.into())), true).expect("same domain")
    }

    pub fn restrict(&self, set: &IntervalSet) -> Self {
        let pieces = overlaps(&self.pieces, |p| &p.interval, set.components(), |k| k)
            .into_iter()
            .map(|(i, _, x)| self.pieces[i].with_interval(x))
            .collect::<Vec<_>>();
        let domain = IntervalSet::normalize(pieces.iter().map(|p| p.interval.clone()).collect(), set.universe().clone())
            .expect("restriction lies in the universe");
        Self::canonical(domain, pieces)
    }

    /// Exact check that the restriction to `set` is continuous: `set` lies in
    /// the domain and no component of `set` straddles a jump.
    pub fn is_continuous_on(&self, set: &IntervalSet) -> bool {
        if set.universe() != self.domain.universe() || !set.minus(&self.domain).is_empty() {
            return false;
        }
        set.components().iter().all(|comp| {
            let local: Vec<LinearPiece> =
                self.pieces.iter().filter_map(|p| p.interval.intersect(comp).map(|x| p.with_interval(x))).collect();
            local.windows(2).all(|w| {
                let x = w[0].interval.hi();
                x == w[1].interval.lo() && w[0].at(x) == w[1].at(x)
            })
        })
    }

    /// Maximal parts of the domain on which `f` is continuous: runs of
    /// pieces that touch and agree at the junction.
    pub fn continuity_segments(&self) -> Vec<IntervalSet> {
        let universe = self.domain.universe().clone();
        let mut runs: Vec<Vec<Interval>> = Vec::new();
        let mut prev: Option<&LinearPiece> = None;
        for p in &self.pieces {
            let joined = prev.is_some_and(|q| {
                let x = q.interval.hi();
                x == p.interval.lo() && (q.interval.hi_closed() || p.interval.lo_closed()) && q.at(x) == p.at(x)
            });
            match runs.last_mut() {
                Some(run) if joined => run.push(p.interval.clone()),
                _ => runs.push(vec![p.interval.clone()]),
            }
            prev = Some(p);
        }
        runs.into_iter()
            .map(|run| IntervalSet::normalize(run, universe.clone()).expect("pieces lie in the universe"))
            .collect()
    }

    /// Largest `|slope|` over pieces meeting `set`.
    pub fn max_abs_slope_on(&self, set: &IntervalSet) -> Rational {
        self.pieces
            .iter()
            .filter(|p| set.components().iter().any(|k| p.interval.intersect(k).is_some()))
            .map(|p| p.slope.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl MeasurableFn for PiecewiseLinear {
    fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    fn level_gt(&self, t: &Rational) -> IntervalSet {
        self.level(t, Cmp::Gt)
    }

    fn level_ge(&self, t: &Rational) -> IntervalSet {
        self.level(t, Cmp::Ge)
    }

    fn level_lt(&self, t: &Rational) -> IntervalSet {
        self.level(t, Cmp::Lt)
    }

    fn level_le(&self, t: &Rational) -> IntervalSet {
        self.level(t, Cmp::Le)
    }

    fn plus_infinity_set(&self) -> IntervalSet {
        IntervalSet::empty(self.domain.universe().clone())
    }

    fn minus_infinity_set(&self) -> IntervalSet {
        IntervalSet::empty(self.domain.universe().clone())
    }

    fn eval(&self, x: &Rational) -> Result<ExtendedRational> {
        self.piece_at(x)
            .map(|p| ExtendedRational::Finite(p.at(x)))
            .ok_or_else(|| Error::PointOutsideDomain(x.to_string()))
    }
}
