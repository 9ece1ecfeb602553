use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::literal;
use super::rational::{int, Rational};
use super::span::Interval;
use crate::error::{Error, Result};

/// A finite union of pairwise disjoint intervals inside a bounded closed
/// universe, kept in canonical form: components sorted by left endpoint
/// and no two neighbours touching at a point that either of them contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    universe: Interval,
    components: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty(universe: Interval) -> Self {
        debug_assert!(universe.is_closed());
        IntervalSet { universe, components: Vec::new() }
    }

    /// The whole universe as a set.
    pub fn full(universe: Interval) -> Self {
        IntervalSet { components: vec![universe.clone()], universe }
    }

    pub fn universe_from(lo: Rational, hi: Rational) -> Result<Interval> {
        Interval::closed(lo, hi)
    }

    pub fn from_interval(interval: Interval, universe: Interval) -> Result<Self> {
        Self::normalize(vec![interval], universe)
    }

    /// Canonicalizes an arbitrary list of intervals.
    pub fn normalize(raw: Vec<Interval>, universe: Interval) -> Result<Self> {
        if !universe.is_closed() {
            return Err(Error::InvalidInterval(format!("universe {universe} must be closed")));
        }
        if let Some(bad) = raw.iter().find(|i| !i.is_subset_of(&universe)) {
            return Err(Error::ComponentOutsideUniverse(bad.to_string(), universe.to_string()));
        }
        Ok(IntervalSet { components: merge_sorted(raw), universe })
    }

    pub fn universe(&self) -> &Interval {
        &self.universe
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn measure(&self) -> Rational {
        self.components.iter().fold(Rational::zero(), |acc, c| acc + c.length())
    }

    pub fn inf(&self) -> Option<&Rational> {
        self.components.first().map(Interval::lo)
    }

    pub fn sup(&self) -> Option<&Rational> {
        self.components.last().map(Interval::hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.component_containing(x).is_some()
    }

    pub fn component_containing(&self, x: &Rational) -> Option<&Interval> {
        let idx = self.components.partition_point(|c| c.lo() <= x);
        if idx == 0 {
            return None;
        }
        let c = &self.components[idx - 1];
        c.contains(x).then_some(c)
    }

    /// Returns the component that contains all of `interval`, if any.
    pub fn component_covering(&self, interval: &Interval) -> Option<&Interval> {
        self.component_containing(interval.lo())
            .filter(|c| interval.is_subset_of(c))
    }

    pub fn is_closed(&self) -> bool {
        self.components.iter().all(Interval::is_closed)
    }

    /// Openness relative to the universe: endpoints shared with the
    /// universe boundary count as open.
    pub fn is_open_rel(&self) -> bool {
        self.components.iter().all(|c| {
            let lo_ok = !c.lo_closed() || c.lo() == self.universe.lo();
            let hi_ok = !c.hi_closed() || c.hi() == self.universe.hi();
            lo_ok && hi_ok
        })
    }

    fn check_universe(&self, other: &IntervalSet) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch(self.universe.to_string(), other.universe.to_string()));
        }
        Ok(())
    }

    pub fn union(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_universe(other)?;
        let raw = self.components.iter().chain(&other.components).cloned().collect();
        Ok(IntervalSet { components: merge_sorted(raw), universe: self.universe.clone() })
    }

    pub fn intersect(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_universe(other)?;
        let (a, b) = (&self.components, &other.components);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(x) = a[i].intersect(&b[j]) {
                out.push(x);
            }
            let (ai, bj) = (&a[i], &b[j]);
            if ai.ends_before(bj) {
                i += 1;
            } else if bj.ends_before(ai) {
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        Ok(IntervalSet { components: merge_sorted(out), universe: self.universe.clone() })
    }

    pub fn complement(&self) -> IntervalSet {
        let u = &self.universe;
        let mut out = Vec::with_capacity(self.components.len() + 1);
        let mut cursor = (u.lo().clone(), true);
        for c in &self.components {
            if let Some(gap) = Interval::try_new(cursor.0.clone(), c.lo().clone(), cursor.1, !c.lo_closed()) {
                out.push(gap);
            }
            cursor = (c.hi().clone(), !c.hi_closed());
        }
        if let Some(gap) = Interval::try_new(cursor.0, u.hi().clone(), cursor.1, true) {
            out.push(gap);
        }
        IntervalSet { components: out, universe: u.clone() }
    }

    pub fn difference(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_universe(other)?;
        self.intersect(&other.complement())
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn closure(&self) -> IntervalSet {
        let raw = self.components.iter().map(Interval::closure).collect();
        IntervalSet { components: merge_sorted(raw), universe: self.universe.clone() }
    }

    /// Every endpoint of every component, in increasing order.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = Vec::with_capacity(2 * self.components.len());
        for c in &self.components {
            for p in [c.lo(), c.hi()] {
                if v.last() != Some(p) {
                    v.push(p.clone());
                }
            }
        }
        v
    }

    /// Closed `K ⊆ self` with `measure(self) - measure(K) < eps`.
    ///
    /// Each of the `c` components that has an open endpoint is shrunk by
    /// `δ = eps/(4c)` on its open sides; a component no longer than `2δ` is
    /// replaced by its midpoint. The total loss is at most `eps/2`.
    pub fn closed_subset_within(&self, eps: &Rational) -> Result<IntervalSet> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon(eps.clone()));
        }
        let c = self.components.iter().filter(|i| !i.is_closed()).count();
        if c == 0 {
            return Ok(self.clone());
        }
        let delta = eps / int(4 * c as i64);
        let two_delta = &delta * int(2);
        let shrunk = self
            .components
            .iter()
            .map(|i| {
                if i.is_closed() {
                    i.clone()
                } else if i.length() <= two_delta {
                    Interval::point(i.midpoint())
                } else {
                    let lo = if i.lo_closed() { i.lo().clone() } else { i.lo() + &delta };
                    let hi = if i.hi_closed() { i.hi().clone() } else { i.hi() - &delta };
                    Interval::closed(lo, hi).expect("length exceeds the shrink on both sides")
                }
            })
            .collect();
        Ok(IntervalSet { components: merge_sorted(shrunk), universe: self.universe.clone() })
    }

    /// Smallest distance between consecutive components (`None` for fewer
    /// than two components).
    pub fn min_gap(&self) -> Option<Rational> {
        self.components.windows(2).map(|w| w[0].gap_to(&w[1])).min()
    }

    pub fn parse(literal: &str, universe: Interval) -> Result<IntervalSet> {
        literal::parse_set(literal, universe)
    }

    // Infallible variants for operands whose universes agree by construction.

    pub(crate) fn or(&self, other: &IntervalSet) -> IntervalSet {
        self.union(other).expect("operands share a universe")
    }

    pub(crate) fn and(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(other).expect("operands share a universe")
    }

    pub(crate) fn minus(&self, other: &IntervalSet) -> IntervalSet {
        self.difference(other).expect("operands share a universe")
    }

}

/// Sort-and-sweep merge into canonical form.
fn merge_sorted(mut raw: Vec<Interval>) -> Vec<Interval> {
    raw.sort_by(|a, b| a.lo().cmp(b.lo()).then(b.lo_closed().cmp(&a.lo_closed())));
    let mut out: Vec<Interval> = Vec::with_capacity(raw.len());
    for next in raw {
        if let Some(cur) = out.last_mut() {
            let touches = next.lo() < cur.hi()
                || (next.lo() == cur.hi() && (cur.hi_closed() || next.lo_closed()));
            if touches {
                if cur.ends_before(&next) {
                    *cur = Interval::new(cur.lo().clone(), next.hi().clone(), cur.lo_closed(), next.hi_closed())
                        .expect("merged interval is nonempty");
                }
                continue;
            }
        }
        out.push(next);
    }
    out
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_set(self))
    }
}

#[derive(Serialize, Deserialize)]
struct SetDoc {
    universe: String,
    set: String,
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetDoc { universe: self.universe.to_string(), set: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SetDoc::deserialize(d)?;
        let universe = literal::parse_interval(&doc.universe).map_err(serde::de::Error::custom)?;
        literal::parse_set(&doc.set, universe).map_err(serde::de::Error::custom)
    }
}
