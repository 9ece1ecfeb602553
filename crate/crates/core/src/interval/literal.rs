//! Text syntax for intervals and interval sets: `"[0,1) u (2,3]"`.
//!
//! Endpoints are rationals written `p/q` or `p`. The empty set is `{}`; a
//! singleton may be written `{a}` and prints as `[a,a]`.

use super::rational::parse_rational;
use super::set::IntervalSet;
use super::span::Interval;
use crate::error::{Error, Result};

pub fn parse_interval(s: &str) -> Result<Interval> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an interval: {s:?}"));
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        return Ok(Interval::point(parse_rational(inner)?));
    }
    let mut chars = s.chars();
    let lo_closed = match chars.next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let hi_closed = match chars.next_back() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    let (lo, hi) = chars.as_str().split_once(',').ok_or_else(bad)?;
    Interval::new(parse_rational(lo)?, parse_rational(hi)?, lo_closed, hi_closed)
}

pub fn parse_set(s: &str, universe: Interval) -> Result<IntervalSet> {
    let s = s.trim();
    if s == "{}" || s == "∅" || s.is_empty() {
        return Ok(IntervalSet::empty(universe));
    }
    let parts = s
        .split(['u', '∪'])
        .map(parse_interval)
        .collect::<Result<Vec<_>>>()?;
    IntervalSet::normalize(parts, universe)
}

pub fn format_set(set: &IntervalSet) -> String {
    if set.is_empty() {
        return "{}".to_string();
    }
    set.components().iter().map(Interval::to_string).collect::<Vec<_>>().join(" u ")
}

impl std::str::FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_interval(s)
    }
}
