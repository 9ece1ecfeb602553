//! Decay tables `(n, value)` for plotting convergence.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::functions::{sup_on, MeasurableFn, PointwiseSequence};
use crate::interval::{ExtendedRational, IntervalSet, Rational};

/// `(n, m(domain ∖ tail_lt(n, 1/m)))` for `n = 1..=n_max`.
pub fn tail_measure_curve(seq: &PointwiseSequence, m: u64, n_max: u64) -> Result<Vec<(u64, Rational)>> {
    let t = Rational::new(BigInt::one(), BigInt::from(m));
    (1..=n_max).map(|n| Ok((n, seq.domain().minus(&seq.tail_lt(n, &t)?).measure()))).collect()
}

/// `(n, sup_K |f_n - f|)` for `n = 1..=n_max`.
pub fn sup_curve(seq: &PointwiseSequence, k: &IntervalSet, n_max: u64) -> Result<Vec<(u64, ExtendedRational)>> {
    (1..=n_max)
        .map(|n| {
            let g = seq.deviation(n)?;
            Ok((n, sup_on(&g, &k.and(g.domain()))?))
        })
        .collect()
}

/// Renders rows as CSV with header `n,value`.
pub fn to_csv<T: std::fmt::Display>(rows: &[(u64, T)]) -> String {
    let mut out = String::from("n,value\n");
    for (n, v) in rows {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}
