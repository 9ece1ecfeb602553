use num_traits::Zero;

use crate::error::Result;
use crate::interval::{dyadic, int, ExtendedRational, Interval, IntervalSet, Rational};

/// Sorted sample points inside a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    points: Vec<Rational>,
    density: Rational,
}

impl Grid {
    /// `|universe| / 2^12`.
    pub fn default_density(universe: &Interval) -> Rational {
        universe.length() * dyadic(12)
    }

    /// Points of `set`: every endpoint and midpoint, the points `density/2`
    /// inside each endpoint, a regular mesh of spacing `density`, and the
    /// given breakpoints that fall in `set`.
    pub fn over(set: &IntervalSet, density: &Rational, breakpoints: &[Rational]) -> Grid {
        let half = density / int(2);
        let mut points = Vec::new();
        for c in set.components() {
            let (a, b) = (c.lo(), c.hi());
            points.push(c.midpoint());
            if c.lo_closed() {
                points.push(a.clone());
            }
            if c.hi_closed() {
                points.push(b.clone());
            }
            for p in [a + &half, b - &half] {
                if c.contains(&p) {
                    points.push(p);
                }
            }
            if density > &Rational::zero() {
                let mut x = a + density;
                while &x < b {
                    points.push(x.clone());
                    x += density;
                }
            }
        }
        points.extend(breakpoints.iter().filter(|x| set.contains(x)).cloned());
        points.sort();
        points.dedup();
        Grid { points, density: density.clone() }
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn density(&self) -> &Rational {
        &self.density
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest sampled value and where it occurs; `-∞` on an empty grid.
    pub fn max_of(
        &self,
        f: impl Fn(&Rational) -> Result<ExtendedRational> + Sync,
    ) -> Result<(ExtendedRational, Option<Rational>)> {
        use rayon::prelude::*;
        let values: Vec<ExtendedRational> = self.points.par_iter().map(&f).collect::<Result<_>>()?;
        let mut best = (ExtendedRational::NegInfinity, None);
        for (x, v) in self.points.iter().zip(values) {
            if v > best.0 {
                best = (v, Some(x.clone()));
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn grid_covers_endpoints_and_mesh() {
        let u = Interval::closed(int(0), int(1)).unwrap();
        let set = IntervalSet::parse("[0,1/4] u (1/2,1)", u.clone()).unwrap();
        let g = Grid::over(&set, &rat(1, 8), &[rat(3, 8), rat(5, 8)]);
        assert!(g.points().iter().all(|x| set.contains(x)));
        for x in [int(0), rat(1, 4), rat(1, 8), rat(1, 16), rat(5, 8), rat(3, 4), rat(15, 16)] {
            assert!(g.points().contains(&x), "{x}");
        }
        assert!(!g.points().contains(&rat(3, 8)));
        assert!(!g.points().contains(&rat(1, 2)));
    }
}
