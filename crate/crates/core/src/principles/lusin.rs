use std::sync::Arc;

use num_traits::{One, Zero};

use super::cert::{ContinuityWitness, LusinCert, LusinPath};
use super::egoroff::egoroff_classical;
use super::fourth::fourth_principle;
use crate::error::{Error, Result};
use crate::functions::{
    dyadic_simple_approx, is_finite_ae, pos_neg_decompose, DyadicFamily, Function, MeasurableFn, PointwiseSequence,
    Restricted, StepFunction,
};
use crate::interval::{ceil_log2, dyadic, int, ExtendedRational, IntervalSet, Rational};

/// Closed `K_j ⊆ E_j` for every carrier with budget `ε/n` each; `K = ∪ K_j`.
pub fn lusin_step(s: &StepFunction, eps: &Rational) -> Result<LusinCert> {
    if eps <= &Rational::zero() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    if !s.is_simple() {
        return Err(Error::NotSimple);
    }
    let k = separate_carriers(s, eps)?;
    let loss = s.domain().minus(&k).measure();
    let continuity_witness = separation_witness(s, &k).expect("each component of K lies in one carrier");
    Ok(LusinCert { k, epsilon: eps.clone(), loss, continuity_witness, proof_path: LusinPath::Step })
}

fn separate_carriers(s: &StepFunction, eps: &Rational) -> Result<IntervalSet> {
    let universe = s.domain().universe().clone();
    if s.pieces().is_empty() {
        return Ok(IntervalSet::empty(universe));
    }
    let share = eps / int(s.pieces().len() as i64);
    let mut comps = Vec::new();
    for p in s.pieces() {
        comps.extend_from_slice(p.carrier.closed_subset_within(&share)?.components());
    }
    IntervalSet::normalize(comps, universe)
}

fn separation_witness(s: &StepFunction, k: &IntervalSet) -> Option<ContinuityWitness> {
    let mut min_gap: Option<Rational> = None;
    let mut prev: Option<(&Rational, &ExtendedRational)> = None;
    for comp in k.components() {
        let v = s.value_on(comp).filter(|v| v.is_finite())?;
        if let Some((hi, pv)) = prev {
            if pv != v {
                let gap = comp.lo() - hi;
                min_gap = Some(min_gap.map_or(gap.clone(), |g| g.min(gap)));
            }
        }
        prev = Some((comp.hi(), v));
    }
    Some(ContinuityWitness::Separation { min_gap })
}

/// An exact witness that `f` restricted to `k` is continuous, if one exists.
pub fn continuity_witness(f: &Function, k: &IntervalSet) -> Option<ContinuityWitness> {
    match f {
        Function::Step(s) => separation_witness(s, k),
        Function::Linear(p) => p
            .is_continuous_on(k)
            .then(|| ContinuityWitness::Modulus { lipschitz: p.max_abs_slope_on(k) }),
        Function::Reciprocal(r) => {
            if !k.is_subset_of(r.domain()).ok()? {
                return None;
            }
            let lipschitz = match k.inf() {
                Some(a) => r.lipschitz_from(a)?,
                None => Rational::zero(),
            };
            Some(ContinuityWitness::Modulus { lipschitz })
        }
    }
}

/// Bounded part first, then simple approximations: for each of `f⁺`, `f⁻`
/// a closed `K₀` on which the part is at most `M`, then the dyadic ladder of
/// the part scaled into `[0,1]` on `K₀`, separated by [`lusin_step`].
pub fn lusin(f: &Function, eps: &Rational, accuracy: u32, cap: u64) -> Result<LusinCert> {
    run(f, eps, accuracy, LusinPath::Alternative, |part, budget| {
        let c = fourth_principle(part, budget, cap)?;
        Ok((c.k, c.bound))
    })
}

/// As [`lusin`], but `K₀` and its bound come from the first rung of the
/// Egoroff construction applied to the dyadic approximations of each part.
pub fn lusin_classical(f: &Function, eps: &Rational, accuracy: u32, cap: u64) -> Result<LusinCert> {
    run(f, eps, accuracy, LusinPath::Classical, |part, budget| {
        let seq = PointwiseSequence::from_monotone(part.clone(), Arc::new(DyadicFamily::new(part.clone())?))?;
        let c = egoroff_classical(&seq, budget, 1, cap)?;
        // on K₀, f - s_ν < 1 and s_ν ≤ ν
        let bound = int(c.nu(1) as i64) + Rational::one();
        Ok((c.k, bound))
    })
}

fn run(
    f: &Function,
    eps: &Rational,
    accuracy: u32,
    path: LusinPath,
    bounded_part: impl Fn(&Function, &Rational) -> Result<(IntervalSet, Rational)>,
) -> Result<LusinCert> {
    if eps <= &Rational::zero() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    let (finite, bad) = is_finite_ae(f);
    if !finite {
        return Err(Error::NotFiniteAE(bad));
    }
    let domain = f.domain();
    let quarter = eps / int(4);
    let (plus, minus) = pos_neg_decompose(f)?;
    let mut k = domain.clone();
    let mut approximants = Vec::new();
    for part in [&plus, &minus] {
        let (k0, bound) = bounded_part(part, &quarter)?;
        let (kp, s) = dyadic_ladder(part, &k0, &bound, accuracy, &quarter)?;
        k = k.and(&kp);
        approximants.push(s);
    }
    let loss = domain.minus(&k).measure();
    if &loss >= eps {
        return Err(Error::BudgetViolated { m: 0, loss });
    }
    let continuity_witness = match continuity_witness(f, &k) {
        Some(w) => w,
        None => {
            let (sp, sm) = (approximants[0].restrict(&k), approximants[1].restrict(&k));
            let s = sp.combine(&sm, |a, b| a.checked_sub(b))?;
            ContinuityWitness::FiniteAccuracy {
                accuracy,
                oscillation_bound: int(2) * dyadic(accuracy),
                approximant: s.pieces().to_vec(),
            }
        }
    };
    Ok(LusinCert { k, epsilon: eps.clone(), loss, continuity_witness, proof_path: path })
}

/// With `0 ≤ g ≤ bound` on `k0` and `2^e ≥ bound`, runs the dyadic
/// approximations of `g/2^e` on `k0` for `n = 1..accuracy+e`, keeping the
/// points where every one of them is continuous. Loses less than `budget`
/// inside `k0`; the last approximation, scaled back, is within `2^-accuracy`
/// of `g` on the result.
fn dyadic_ladder(
    g: &Function,
    k0: &IntervalSet,
    bound: &Rational,
    accuracy: u32,
    budget: &Rational,
) -> Result<(IntervalSet, StepFunction)> {
    let e = ceil_log2(bound);
    let scaled = g.scale(&dyadic(e))?;
    let on_k0 = Restricted::new(&scaled, k0)?;
    let mut k = k0.clone();
    let mut last = None;
    for n in 1..=accuracy + e {
        let s = dyadic_simple_approx(&on_k0, n)?;
        k = k.and(&separate_carriers(&s, &(budget * dyadic(n)))?);
        last = Some(s);
    }
    let up = int(1) / dyadic(e);
    let s = match last {
        Some(s) => s.map_values(|v| v.checked_scale(&up))?,
        None => StepFunction::zero(k0.clone()),
    };
    Ok((k, s))
}
