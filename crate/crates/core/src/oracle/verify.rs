use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::brute::brute_force_min_index;
use super::grid::Grid;
use super::report::{Check, VerificationReport};
use crate::error::{Error, Result};
use crate::functions::{sup_on, Function, MeasurableFn, PointwiseSequence, StepFunction, TermFamily};
use crate::interval::{dyadic, int, ExtendedRational, IntervalSet, Rational};
use crate::principles::{
    BoundednessCert, Certificate, ContinuityWitness, DecompositionCert, DiniCert, EgoroffCert, EgoroffPath, LusinCert,
};

/// How many indices past each `ν(m)` the sampled tail check visits.
pub const DEFAULT_DEPTH: u64 = 16;

/// The objects a certificate was built from.
#[derive(Debug, Clone)]
pub enum Inputs {
    Set(IntervalSet),
    Function(Function),
    Sequence(PointwiseSequence),
    Dini { terms: Arc<dyn TermFamily>, limit: Function },
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Mesh spacing; `None` means `|universe| / 2^12`.
    pub grid_density: Option<Rational>,
    pub depth: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { grid_density: None, depth: DEFAULT_DEPTH }
    }
}

fn rats(r: &Rational) -> String {
    r.to_string()
}

fn recip(m: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(m))
}

/// Checks `cert` against the inputs it claims to describe.
pub fn verify(cert: &Certificate, inputs: &Inputs, options: &VerifyOptions) -> Result<VerificationReport> {
    let density = |universe: &crate::Interval| {
        options.grid_density.clone().unwrap_or_else(|| Grid::default_density(universe))
    };
    let (structural, sampled) = match (cert, inputs) {
        (Certificate::Decomposition(c), Inputs::Set(e)) => (decomposition(c, e)?, Vec::new()),
        (Certificate::Boundedness(c), Inputs::Function(f)) => boundedness(c, f, &density(f.domain().universe()))?,
        (Certificate::Lusin(c), Inputs::Function(f)) => lusin(c, f, &density(f.domain().universe()))?,
        (Certificate::Egoroff(c), Inputs::Sequence(s)) => {
            egoroff(c, s, &density(s.domain().universe()), options.depth)?
        }
        (Certificate::Dini(c), Inputs::Dini { terms, limit }) => {
            dini(c, terms.as_ref(), limit, &density(limit.domain().universe()))?
        }
        (c, _) => return Err(Error::InputMismatch(format!("inputs do not match a {} certificate", c.kind()))),
    };
    Ok(VerificationReport::new(cert.kind(), structural, sampled))
}

/// Checks shared by every certificate with a closed `K` inside `domain`.
fn common(k: &IntervalSet, domain: &IntervalSet, eps: &Rational, loss: &Rational) -> Result<Vec<Check>> {
    let actual = domain.difference(k)?.measure();
    Ok(vec![
        Check::new("epsilon positive", eps > &Rational::zero(), format!("epsilon = {}", rats(eps))),
        Check::new("K closed", k.is_closed(), format!("K = {k}")),
        Check::new("K inside domain", k.is_subset_of(domain)?, format!("domain = {domain}")),
        Check::new("loss recomputed", &actual == loss, format!("claimed {}, measured {}", rats(loss), rats(&actual))),
        Check::new("loss below epsilon", &actual < eps, format!("loss {}, epsilon {}", rats(&actual), rats(eps))),
    ])
}

fn decomposition(c: &DecompositionCert, e: &IntervalSet) -> Result<Vec<Check>> {
    let mut checks = common(&c.k, e, &c.epsilon, &c.loss)?;
    let union = c.k.union(&c.f)?;
    let overlap = c.k.intersect(&c.f)?;
    checks.push(Check::new("K ∪ F = E", &union == e, format!("K ∪ F = {union}")));
    checks.push(Check::new("K ∩ F = ∅", overlap.is_empty(), format!("K ∩ F = {overlap}")));
    let mf = c.f.measure();
    checks.push(Check::new("m(F) = loss", mf == c.loss, format!("m(F) = {}", rats(&mf))));
    Ok(checks)
}

fn boundedness(c: &BoundednessCert, f: &Function, density: &Rational) -> Result<(Vec<Check>, Vec<Check>)> {
    let mut structural = common(&c.k, f.domain(), &c.epsilon, &c.loss)?;
    let above = f.abs_level_gt(&c.bound).and(&c.k);
    structural.push(Check::new(
        "|f| ≤ bound on K",
        above.is_empty(),
        format!("L(|f|, {}) ∩ K = {above}", rats(&c.bound)),
    ));
    let grid = Grid::over(&c.k.and(f.domain()), density, &f.breakpoints());
    let (worst, at) = grid.max_of(|x| Ok(f.eval(x)?.abs()))?;
    let sampled = vec![Check::new(
        "sampled |f| ≤ bound",
        worst <= ExtendedRational::Finite(c.bound.clone()),
        format!("max |f| on {} points = {worst}", grid.len()),
    )
    .with_witness(at.map(|x| rats(&x)))];
    Ok((structural, sampled))
}

/// Each component of `k` inside one finite-valued carrier of `s`; returns
/// the smallest gap between neighbouring components with different values.
fn separation(s: &StepFunction, k: &IntervalSet) -> std::result::Result<Option<Rational>, String> {
    let mut gap: Option<Rational> = None;
    let mut prev: Option<(Rational, ExtendedRational)> = None;
    for comp in k.components() {
        let v = match s.value_on(comp) {
            Some(v) if v.is_finite() => v.clone(),
            Some(_) => return Err(format!("{comp} carries an infinite value")),
            None => return Err(format!("{comp} meets more than one piece")),
        };
        if let Some((hi, pv)) = &prev {
            if pv != &v {
                let g = comp.lo() - hi;
                gap = Some(gap.map_or(g.clone(), |x: Rational| x.min(g)));
            }
        }
        prev = Some((comp.hi().clone(), v));
    }
    Ok(gap)
}

fn lusin(c: &LusinCert, f: &Function, density: &Rational) -> Result<(Vec<Check>, Vec<Check>)> {
    let mut structural = common(&c.k, f.domain(), &c.epsilon, &c.loss)?;
    let k = c.k.and(f.domain());
    let grid = Grid::over(&k, density, &f.breakpoints());
    let mut sampled = Vec::new();
    match &c.continuity_witness {
        ContinuityWitness::Separation { min_gap } => {
            let found = match f {
                Function::Step(s) => separation(s, &k),
                _ => Err(format!("separation witness for a {} function", f.kind())),
            };
            let (ok, detail) = match &found {
                Ok(g) => (
                    g == min_gap && g.as_ref().is_none_or(|g| g > &Rational::zero()),
                    format!("gap claimed {:?}, measured {:?}", min_gap.as_ref().map(rats), g.as_ref().map(rats)),
                ),
                Err(e) => (false, e.clone()),
            };
            structural.push(Check::new("components separated", ok, detail));
            sampled.push(constant_on_components(f, &grid, &k)?);
        }
        ContinuityWitness::Modulus { lipschitz } => {
            let (ok, detail) = match f {
                Function::Step(s) => match separation(s, &k) {
                    Ok(_) => (true, "constant on each component".to_string()),
                    Err(e) => (false, e),
                },
                Function::Linear(p) => {
                    let cont = p.is_continuous_on(&k);
                    let slope = p.max_abs_slope_on(&k);
                    (
                        cont && &slope <= lipschitz,
                        format!("continuous: {cont}, max |slope| = {}", rats(&slope)),
                    )
                }
                Function::Reciprocal(r) => {
                    let inside = c.k.is_subset_of(r.domain())?;
                    let l = c.k.inf().and_then(|a| r.lipschitz_from(a)).unwrap_or_else(Rational::zero);
                    (inside && &l <= lipschitz, format!("inside domain: {inside}, c/(min K - p)^2 = {}", rats(&l)))
                }
            };
            structural.push(Check::new("Lipschitz modulus", ok, detail));
            sampled.push(lipschitz_on_grid(f, &grid, &k, lipschitz)?);
        }
        ContinuityWitness::FiniteAccuracy { accuracy, oscillation_bound, approximant } => {
            let claimed = int(2) * dyadic(*accuracy);
            structural.push(Check::new(
                "oscillation bound matches accuracy",
                oscillation_bound >= &claimed,
                format!("bound {}, floor 2·2^-{accuracy}", rats(oscillation_bound)),
            ));
            let half = oscillation_bound / int(2);
            match StepFunction::new(c.k.universe().clone(), approximant.iter().map(|p| (p.carrier.clone(), p.value.clone())).collect()) {
                Ok(s) => {
                    let dom_ok = s.domain() == &k;
                    let sep = separation(&s, &k);
                    structural.push(Check::new(
                        "approximant continuous on K",
                        dom_ok && sep.is_ok(),
                        format!("domain matches K: {dom_ok}; {}", sep.err().unwrap_or_else(|| "separated".into())),
                    ));
                    if let (true, Ok(fk)) = (dom_ok, f.restrict(&k)) {
                        let sup = sup_on(&fk.abs_diff(&s.clone().into())?, &k)?;
                        structural.push(Check::new(
                            "approximant within bound",
                            sup <= ExtendedRational::Finite(half.clone()),
                            format!("sup |f - s| = {sup}"),
                        ));
                    }
                    let (worst, at) = grid.max_of(|x| Ok(f.eval(x)?.checked_sub(&s.eval(x)?)?.abs()))?;
                    sampled.push(
                        Check::new(
                            "sampled |f - s| within bound",
                            worst <= ExtendedRational::Finite(half),
                            format!("max on {} points = {worst}", grid.len()),
                        )
                        .with_witness(at.map(|x| rats(&x))),
                    );
                }
                Err(e) => structural.push(Check::new("approximant well formed", false, e.to_string())),
            }
        }
    }
    Ok((structural, sampled))
}

fn constant_on_components(f: &Function, grid: &Grid, k: &IntervalSet) -> Result<Check> {
    let mut bad = None;
    let pts = grid.points();
    for w in pts.windows(2) {
        if k.component_containing(&w[0]) == k.component_containing(&w[1]) && f.eval(&w[0])? != f.eval(&w[1])? {
            bad = Some(rats(&w[1]));
            break;
        }
    }
    Ok(Check::new("sampled constant on components", bad.is_none(), format!("{} points", pts.len())).with_witness(bad))
}

fn lipschitz_on_grid(f: &Function, grid: &Grid, k: &IntervalSet, l: &Rational) -> Result<Check> {
    let pts = grid.points();
    let vals: Vec<ExtendedRational> = pts.par_iter().map(|x| f.eval(x)).collect::<Result<_>>()?;
    let mut bad = None;
    for i in 1..pts.len() {
        if k.component_containing(&pts[i - 1]) != k.component_containing(&pts[i]) {
            continue;
        }
        let d = vals[i].checked_sub(&vals[i - 1])?.abs();
        if d > ExtendedRational::Finite(l * (&pts[i] - &pts[i - 1])) {
            bad = Some(rats(&pts[i]));
            break;
        }
    }
    Ok(Check::new("sampled Lipschitz bound", bad.is_none(), format!("{} points, L = {}", pts.len(), rats(l)))
        .with_witness(bad))
}

fn egoroff(c: &EgoroffCert, seq: &PointwiseSequence, density: &Rational, depth: u64) -> Result<(Vec<Check>, Vec<Check>)> {
    let domain = seq.domain();
    let mut structural = common(&c.k, domain, &c.epsilon, &c.loss)?;
    let table = &c.index_table;
    let shape = table.len() as u64 == c.ladder && c.ladder > 0 && table.iter().all(|&n| n >= 1)
        && table.windows(2).all(|w| w[0] <= w[1]);
    structural.push(Check::new("index table shape", shape, format!("ladder {}, table {table:?}", c.ladder)));
    let contract_ok = c.tail == seq.contract();
    structural.push(Check::new("tail contract", contract_ok, format!("{:?}", seq.contract())));
    if !shape {
        return Ok((structural, Vec::new()));
    }
    let rows: Vec<(u64, u64)> = table.iter().enumerate().map(|(i, &n)| (i as u64 + 1, n)).collect();
    for &(m, nu) in &rows {
        let t = recip(m);
        let tail = seq.tail_lt(nu, &t)?;
        let outside = c.k.minus(&tail);
        structural.push(Check::new(
            format!("K ⊆ tail(ν({m}), 1/{m})"),
            outside.is_empty(),
            format!("ν = {nu}, K ∖ tail = {outside}"),
        ));
        match c.proof_path {
            EgoroffPath::Classical => {
                let budget = &c.epsilon * dyadic((m + 1) as u32);
                let lost = domain.minus(&tail).measure();
                structural.push(Check::new(
                    format!("budget for 1/{m}"),
                    lost < budget,
                    format!("m(domain ∖ tail) = {}, budget {}", rats(&lost), rats(&budget)),
                ));
                let start = if m == 1 { 1 } else { table[m as usize - 2] };
                if nu > start {
                    let before = domain.minus(&seq.tail_lt(nu - 1, &t)?).measure();
                    structural.push(Check::new(
                        format!("ν({m}) least"),
                        before >= budget,
                        format!("at ν - 1: m(domain ∖ tail) = {}, budget {}", rats(&before), rats(&budget)),
                    ));
                }
            }
            EgoroffPath::Dini => {
                let bound = ExtendedRational::Finite(t.clone());
                let sup = sup_on(&seq.deviation(nu)?, &c.k.and(domain))?;
                structural.push(Check::new(format!("sup on K at ν({m})"), sup < bound, format!("sup = {sup}")));
                if nu > 1 {
                    let prev = sup_on(&seq.deviation(nu - 1)?, &c.k.and(domain))?;
                    structural.push(Check::new(format!("ν({m}) least"), prev >= bound, format!("sup at ν - 1 = {prev}")));
                }
            }
        }
    }
    let breaks: Vec<Rational> =
        rows.iter().flat_map(|&(_, nu)| (nu..=nu + depth).flat_map(|n| seq.breakpoints(n))).collect();
    let grid = Grid::over(&c.k.and(domain), density, &breaks);
    let jobs: Vec<(u64, u64)> = rows.iter().flat_map(|&(m, nu)| (nu..=nu + depth).map(move |n| (m, n))).collect();
    let worst: Vec<(ExtendedRational, Option<Rational>)> =
        jobs.par_iter().map(|&(_, n)| grid.max_of(seq.deviation_evaluator(n)?)).collect::<Result<_>>()?;
    let sampled = rows
        .iter()
        .map(|&(m, nu)| {
            let bound = ExtendedRational::Finite(recip(m));
            let bad = jobs.iter().zip(&worst).find(|((mm, _), (w, _))| *mm == m && w >= &bound);
            let detail = format!("n = {nu}..={}, {} points", nu + depth, grid.len());
            match bad {
                Some(((_, n), (w, at))) => Check::new(format!("sampled tail for 1/{m}"), false, format!("{detail}; |f_{n} - f| = {w}"))
                    .with_witness(at.as_ref().map(rats)),
                None => Check::new(format!("sampled tail for 1/{m}"), true, detail),
            }
        })
        .collect();
    Ok((structural, sampled))
}

fn dini(c: &DiniCert, terms: &dyn TermFamily, limit: &Function, density: &Rational) -> Result<(Vec<Check>, Vec<Check>)> {
    let eps = ExtendedRational::Finite(c.epsilon.clone());
    let mut structural = vec![
        Check::new("epsilon positive", c.epsilon > Rational::zero(), format!("epsilon = {}", rats(&c.epsilon))),
        Check::new("K closed", c.k.is_closed(), format!("K = {}", c.k)),
        Check::new("K inside domain", c.k.is_subset_of(limit.domain())?, format!("domain = {}", limit.domain())),
        Check::new("index positive", c.index >= 1, format!("index = {}", c.index)),
    ];
    if c.index == 0 || !c.k.is_subset_of(limit.domain())? {
        return Ok((structural, Vec::new()));
    }
    let h = |n: u64| -> Result<Function> { limit.abs_diff(&terms.term(n)?)?.restrict(&c.k) };
    let at = sup_on(&h(c.index)?, &c.k)?;
    structural.push(Check::new("sup below epsilon at index", at < eps, format!("sup = {at}")));
    if c.index > 1 {
        let before = sup_on(&h(c.index - 1)?, &c.k)?;
        structural.push(Check::new("index least", before >= eps, format!("sup at index - 1 = {before}")));
    }
    let mut monotone = true;
    for n in 1..c.index {
        if !h(n)?.sub(&h(n + 1)?)?.level_lt(&Rational::zero()).is_empty() {
            monotone = false;
            break;
        }
    }
    structural.push(Check::new("monotone on K", monotone, format!("h_1 ≥ … ≥ h_{}", c.index)));
    if let Some(trace) = &c.cover_trace {
        let mut ok = trace.len() as u64 == c.index && trace.last() == Some(&c.k);
        if ok {
            for (i, a) in trace.iter().enumerate() {
                ok &= a == &h(i as u64 + 1)?.level_lt(&c.epsilon);
            }
        }
        structural.push(Check::new("cover trace", ok, format!("{} sets", trace.len())));
    }
    let breaks: Vec<Rational> = (1..=c.index + 1).flat_map(|n| terms.breakpoints(n)).chain(limit.breakpoints()).collect();
    let grid = Grid::over(&c.k, density, &breaks);
    let found = brute_force_min_index(terms, limit, &grid, &c.epsilon, c.index + 1)?;
    let sampled = vec![Check::new(
        "brute-force index",
        found == Some(c.index),
        format!("grid of {} points gives {found:?}", grid.len()),
    )];
    Ok((structural, sampled))
}
