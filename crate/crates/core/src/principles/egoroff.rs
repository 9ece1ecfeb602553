use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cert::{EgoroffCert, EgoroffPath};
use super::lusin::lusin_step;
use super::search::least_index;
use crate::error::{Error, Result};
use crate::functions::{sup_on, Function, PointwiseSequence, TailMode};
use crate::interval::{dyadic, int, ExtendedRational, IntervalSet, Rational};

fn recip(m: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(m))
}

fn check(eps: &Rational, ladder: u64) -> Result<()> {
    if eps <= &Rational::zero() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    if ladder == 0 {
        return Err(Error::Scenario("ladder must be at least 1".into()));
    }
    Ok(())
}

/// For `m = 1..ladder`, `ν(m)` is the least `n ≥ ν(m-1)` with
/// `m(domain ∖ tail_lt(n, 1/m)) < ε/2^{m+1}`. The union of those exceptional
/// sets costs less than `ε/2`; the closed extraction costs less than `ε/2`.
pub fn egoroff_classical(seq: &PointwiseSequence, eps: &Rational, ladder: u64, cap: u64) -> Result<EgoroffCert> {
    check(eps, ladder)?;
    let domain = seq.domain();
    let (table, bad) = classical_table(seq, eps, 1, ladder, 1, cap)?;
    let k = domain.minus(&bad).closed_subset_within(&(eps / int(2)))?;
    let loss = domain.minus(&k).measure();
    Ok(EgoroffCert {
        k,
        epsilon: eps.clone(),
        ladder,
        index_table: table,
        proof_path: EgoroffPath::Classical,
        loss,
        tail: seq.contract(),
    })
}

/// Table entries for `m in first..=last`, scanning from `start`, and the
/// union of their exceptional sets.
fn classical_table(
    seq: &PointwiseSequence,
    eps: &Rational,
    first: u64,
    last: u64,
    start: u64,
    cap: u64,
) -> Result<(Vec<u64>, IntervalSet)> {
    let domain = seq.domain();
    let mut bad = IntervalSet::empty(domain.universe().clone());
    let mut table = Vec::new();
    let mut prev = start;
    for m in first..=last {
        let t = recip(m);
        let budget = eps * dyadic((m + 1) as u32);
        let outside = |n: u64| -> Result<IntervalSet> { Ok(domain.minus(&seq.tail_lt(n, &t)?)) };
        let nu = least_index(&format!("index for 1/{m}"), prev, cap, |n| Ok(outside(n)?.measure() < budget))?;
        bad = bad.or(&outside(nu)?);
        table.push(nu);
        prev = nu;
    }
    Ok((table, bad))
}

/// Extends a classical certificate to a longer ladder. Existing entries are
/// kept and the new `K` is a subset of the old one.
pub fn refine_egoroff(cert: &EgoroffCert, seq: &PointwiseSequence, ladder: u64, cap: u64) -> Result<EgoroffCert> {
    if cert.proof_path != EgoroffPath::Classical {
        return Err(Error::InputMismatch("only classical certificates can be refined".into()));
    }
    if ladder <= cert.ladder {
        return Ok(cert.clone());
    }
    let domain = seq.domain();
    let start = *cert.index_table.last().expect("ladder is at least 1");
    let (more, bad) = classical_table(seq, &cert.epsilon, cert.ladder + 1, ladder, start, cap)?;
    let trimmed = cert.k.minus(&bad);
    let slack = &cert.epsilon - domain.minus(&trimmed).measure();
    let k = trimmed.closed_subset_within(&slack)?;
    let loss = domain.minus(&k).measure();
    let mut index_table = cert.index_table.clone();
    index_table.extend(more);
    Ok(EgoroffCert { k, ladder, index_table, loss, ..cert.clone() })
}

/// The deviations `g_n = |f_n - f|` are monotone; find `ν` with
/// `m(g_ν ≥ 1) < ε/4`, keep a closed part of `{g_ν < 1}`, then for each
/// `n ≥ ν` keep closed pieces on which `g_n` is continuous (budget
/// `ε/2^{n-ν+2}`), advancing `n` until `sup_K g_n < 1/m` for each `m`.
/// The table holds the least such indices on the final `K`.
pub fn egoroff_dini(seq: &PointwiseSequence, eps: &Rational, ladder: u64, cap: u64) -> Result<EgoroffCert> {
    check(eps, ladder)?;
    if seq.mode() != TailMode::Exact {
        return Err(Error::NotExactMode);
    }
    let contract = seq.contract();
    if !contract.monotone_by_construction && contract.checked_to.is_none() {
        return Err(Error::NonMonotoneSequence(0));
    }
    let domain = seq.domain();
    let quarter = eps / int(4);
    let one = Rational::one();
    let nu = least_index("bounded tail", 1, cap, |n| Ok(domain.minus(&seq.tail_lt(n, &one)?).measure() < quarter))?;
    let mut k = seq.tail_lt(nu, &one)?.closed_subset_within(&quarter)?;

    let mut devs: Vec<Function> = Vec::new();
    let deviation = |devs: &mut Vec<Function>, n: u64| -> Result<Function> {
        while devs.len() < n as usize {
            devs.push(seq.deviation(devs.len() as u64 + 1)?);
        }
        Ok(devs[n as usize - 1].clone())
    };
    let below = |g: &Function, k: &IntervalSet, m: u64| -> Result<bool> {
        Ok(sup_on(g, &k.and(g.domain()))? < ExtendedRational::Finite(recip(m)))
    };

    let mut n = nu;
    let mut extracted = nu - 1;
    for m in 1..=ladder {
        loop {
            if n > cap {
                return Err(Error::IterationCapExceeded { what: format!("uniform index for 1/{m}"), cap });
            }
            let g = deviation(&mut devs, n)?;
            if n > extracted {
                let budget = eps * dyadic((n - nu + 2) as u32);
                k = k.and(&continuity_part(&g, &budget)?);
                extracted = n;
            }
            if below(&g, &k, m)? {
                break;
            }
            n += 1;
        }
    }

    // least indices on the final K; monotone g_n make the scan valid
    let mut table = Vec::with_capacity(ladder as usize);
    let mut prev = 1;
    for m in 1..=ladder {
        let mut j = prev;
        while !below(&deviation(&mut devs, j)?, &k, m)? {
            j += 1;
        }
        table.push(j);
        prev = j;
    }
    let loss = domain.minus(&k).measure();
    if &loss >= eps {
        return Err(Error::BudgetViolated { m: 0, loss });
    }
    Ok(EgoroffCert {
        k,
        epsilon: eps.clone(),
        ladder,
        index_table: table,
        proof_path: EgoroffPath::Dini,
        loss,
        tail: contract,
    })
}

/// A closed subset of the domain of `g`, losing less than `budget`, on
/// which `g` is continuous.
fn continuity_part(g: &Function, budget: &Rational) -> Result<IntervalSet> {
    match g {
        Function::Step(s) if s.is_simple() => Ok(lusin_step(s, budget)?.k),
        Function::Step(s) => {
            // infinite values: separate every carrier anyway
            let share = budget / int(s.pieces().len() as i64);
            let mut comps = Vec::new();
            for p in s.pieces() {
                comps.extend_from_slice(p.carrier.closed_subset_within(&share)?.components());
            }
            IntervalSet::normalize(comps, s.domain().universe().clone())
        }
        Function::Linear(p) => {
            let segments = p.continuity_segments();
            let share = budget / int(segments.len().max(1) as i64);
            let mut comps = Vec::new();
            for seg in &segments {
                comps.extend_from_slice(seg.closed_subset_within(&share)?.components());
            }
            IntervalSet::normalize(comps, p.domain().universe().clone())
        }
        Function::Reciprocal(_) => Err(Error::NotExactMode),
    }
}

use crate::functions::MeasurableFn;
