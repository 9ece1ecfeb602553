use std::collections::BTreeMap;

use super::MeasurableFn;
use crate::error::{Error, Result};
use crate::interval::{overlaps, ExtendedRational, Interval, IntervalSet, Rational};

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StepPiece {
    pub carrier: IntervalSet,
    pub value: ExtendedRational,
}

/// `s = Σ c_j 𝒳_{E_j}` with pairwise disjoint carriers and pairwise
/// distinct values (possibly infinite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    domain: IntervalSet,
    pieces: Vec<StepPiece>,
    // every carrier component tagged with its piece, sorted by left endpoint
    index: Vec<(Interval, usize)>,
}

impl StepFunction {
    pub fn new(universe: Interval, pieces: Vec<(IntervalSet, ExtendedRational)>) -> Result<Self> {
        let mut atoms = Vec::new();
        for (carrier, value) in pieces {
            if carrier.universe() != &universe {
                return Err(Error::UniverseMismatch(carrier.universe().to_string(), universe.to_string()));
            }
            atoms.extend(carrier.components().iter().map(|c| (c.clone(), value.clone())));
        }
        atoms.sort_by(|a, b| a.0.lo().cmp(b.0.lo()).then(b.0.lo_closed().cmp(&a.0.lo_closed())));
        for w in atoms.windows(2) {
            if w[0].0.intersect(&w[1].0).is_some() {
                return Err(Error::InvalidInterval(format!("carriers overlap at {} and {}", w[0].0, w[1].0)));
            }
        }
        Ok(Self::from_atoms(universe, atoms))
    }

    pub fn constant(domain: IntervalSet, value: ExtendedRational) -> Self {
        let universe = domain.universe().clone();
        let atoms = domain.components().iter().map(|c| (c.clone(), value.clone())).collect();
        Self::from_atoms(universe, atoms)
    }

    pub fn zero(domain: IntervalSet) -> Self {
        Self::constant(domain, ExtendedRational::zero())
    }

    /// Builds from pairwise disjoint atoms; equal values are grouped.
    pub(crate) fn from_atoms(universe: Interval, atoms: Vec<(Interval, ExtendedRational)>) -> Self {
        let mut groups: BTreeMap<ExtendedRational, Vec<Interval>> = BTreeMap::new();
        for (iv, v) in atoms {
            groups.entry(v).or_default().push(iv);
        }
        let pieces: Vec<StepPiece> = groups
            .into_iter()
            .map(|(value, ivs)| StepPiece {
                carrier: IntervalSet::normalize(ivs, universe.clone()).expect("atoms lie in the universe"),
                value,
            })
            .collect();
        let mut index: Vec<(Interval, usize)> = pieces
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.carrier.components().iter().map(move |c| (c.clone(), i)))
            .collect();
        index.sort_by(|a, b| a.0.lo().cmp(b.0.lo()).then(b.0.lo_closed().cmp(&a.0.lo_closed())));
        let domain = IntervalSet::normalize(index.iter().map(|(c, _)| c.clone()).collect(), universe)
            .expect("atoms lie in the universe");
        StepFunction { domain, pieces, index }
    }

    pub fn pieces(&self) -> &[StepPiece] {
        &self.pieces
    }

    /// Carrier components in left-to-right order with their values.
    pub fn atoms(&self) -> impl Iterator<Item = (&Interval, &ExtendedRational)> {
        self.index.iter().map(|(c, i)| (c, &self.pieces[*i].value))
    }

    /// `true` when every value is finite.
    pub fn is_simple(&self) -> bool {
        self.pieces.iter().all(|p| p.value.is_finite())
    }

    /// The carrier component containing `x`, with its value.
    pub fn atom_at(&self, x: &Rational) -> Option<(&Interval, &ExtendedRational)> {
        // atoms of different values may touch, as in [a,b] and (b,c]
        let idx = self.index.partition_point(|(c, _)| c.lo() <= x);
        self.index[idx.saturating_sub(2)..idx]
            .iter()
            .rev()
            .find(|(c, _)| c.contains(x))
            .map(|(c, i)| (c, &self.pieces[*i].value))
    }

    /// The value taken on all of `interval`, if `interval` lies in a single carrier component.
    pub fn value_on(&self, interval: &Interval) -> Option<&ExtendedRational> {
        self.atom_at(interval.lo()).filter(|(c, _)| interval.is_subset_of(c)).map(|(_, v)| v)
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        self.domain_points()
    }

    fn domain_points(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.index.iter().flat_map(|(c, _)| [c.lo().clone(), c.hi().clone()]).collect();
        v.sort();
        v.dedup();
        v
    }

    fn union_where(&self, pred: impl Fn(&ExtendedRational) -> bool) -> IntervalSet {
        let comps = self
            .pieces
            .iter()
            .filter(|p| pred(&p.value))
            .flat_map(|p| p.carrier.components().iter().cloned())
            .collect();
        IntervalSet::normalize(comps, self.domain.universe().clone()).expect("carriers lie in the universe")
    }

    pub fn map_values(&self, f: impl Fn(&ExtendedRational) -> Result<ExtendedRational>) -> Result<Self> {
        let atoms = self
            .index
            .iter()
            .map(|(c, i)| Ok((c.clone(), f(&self.pieces[*i].value)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_atoms(self.domain.universe().clone(), atoms))
    }

    /// Pointwise combination over the common refinement of both carriers.
    pub fn combine(
        &self,
        other: &StepFunction,
        op: impl Fn(&ExtendedRational, &ExtendedRational) -> Result<ExtendedRational>,
    ) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let (a, b) = (&self.index, &other.index);
        let (mut i, mut j) = (0, 0);
        let mut atoms = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            if let Some(x) = a[i].0.intersect(&b[j].0) {
                atoms.push((x, op(&self.pieces[a[i].1].value, &other.pieces[b[j].1].value)?));
            }
            if a[i].0.ends_before(&b[j].0) {
                i += 1;
            } else if b[j].0.ends_before(&a[i].0) {
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        Ok(Self::from_atoms(self.domain.universe().clone(), atoms))
    }

    pub fn restrict(&self, set: &IntervalSet) -> Self {
        let atoms = overlaps(&self.index, |(c, _)| c, set.components(), |k| k)
            .into_iter()
            .map(|(i, _, x)| (x, self.pieces[self.index[i].1].value.clone()))
            .collect();
        Self::from_atoms(self.domain.universe().clone(), atoms)
    }
}

impl MeasurableFn for StepFunction {
    fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    fn level_gt(&self, t: &Rational) -> IntervalSet {
        self.union_where(|v| v.cmp_rational(t).is_gt())
    }

    fn level_ge(&self, t: &Rational) -> IntervalSet {
        self.union_where(|v| v.cmp_rational(t).is_ge())
    }

    fn plus_infinity_set(&self) -> IntervalSet {
        self.union_where(|v| *v == ExtendedRational::PosInfinity)
    }

    fn minus_infinity_set(&self) -> IntervalSet {
        self.union_where(|v| *v == ExtendedRational::NegInfinity)
    }

    fn eval(&self, x: &Rational) -> Result<ExtendedRational> {
        self.atom_at(x).map(|(_, v)| v.clone()).ok_or_else(|| Error::PointOutsideDomain(x.to_string()))
    }
}
