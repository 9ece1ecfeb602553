//! JSON scenario files: named sets, functions and sequences plus one task.
//!
//! ```json
//! {
//!   "universe": "[0,1]",
//!   "functions": { "f": { "kind": "recip", "pole": "0", "coef": "1", "domain": "(0,1]" } },
//!   "task": "bound",
//!   "target": "f",
//!   "epsilon": "1/10"
//! }
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{
    ConstantFamily, DyadicFamily, Function, LinearPiece, PiecewiseLinear, PointwiseSequence, RampSpike, ReciprocalRamp,
    ShrinkingIndicator, StepDecay, StepFunction, TailMode, TermFamily, XOverN, DEFAULT_CHECK_DEPTH,
};
use crate::interval::{parse_interval, parse_rational, ExtendedRational, Interval, IntervalSet, Rational};
use crate::oracle::Inputs;
use crate::principles::{
    dini_index, egoroff_classical, egoroff_dini, fourth_principle, lusin, lusin_classical, lusin_step,
    principle1_decompose, Certificate, DiniAlgorithm, DEFAULT_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Decompose,
    Bound,
    LusinStep,
    Lusin,
    LusinClassical,
    Egoroff,
    EgoroffDini,
    Dini,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    /// `[set literal, value]` pairs; values may be `+inf` / `-inf`.
    Step { pieces: Vec<(String, String)> },
    /// `[interval, slope, offset]` triples.
    Pl { pieces: Vec<(String, String, String)> },
    /// `coef/(x - pole)` on `domain = (pole, right]`.
    Recip { pole: String, coef: String, domain: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SequenceSpec {
    RampSpike {
        a: Option<String>,
        b: Option<String>,
    },
    XOverN {
        a: Option<String>,
        b: Option<String>,
    },
    ShrinkingIndicator {
        a: Option<String>,
        b: Option<String>,
        #[serde(default)]
        mode: Option<TailMode>,
    },
    StepDecay {
        carrier: String,
    },
    Constant {
        function: String,
    },
    Dyadic {
        function: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub universe: String,
    #[serde(default)]
    pub sets: BTreeMap<String, String>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionSpec>,
    #[serde(default)]
    pub sequences: BTreeMap<String, SequenceSpec>,
    pub task: Task,
    /// Name of the set, function or sequence the task runs on.
    pub target: String,
    /// The compact set for `dini`, by name or literal.
    #[serde(default)]
    pub set: Option<String>,
    #[serde(default)]
    pub algorithm: Option<DiniAlgorithm>,
    pub epsilon: String,
    #[serde(default)]
    pub ladder: Option<u64>,
    #[serde(default)]
    pub accuracy: Option<u32>,
    #[serde(default)]
    pub cap: Option<u64>,
}

/// Numeric knobs for one run, after command-line overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunParams {
    pub epsilon: Rational,
    pub ladder: u64,
    pub accuracy: u32,
    pub cap: u64,
}

pub const DEFAULT_LADDER: u64 = 4;
pub const DEFAULT_ACCURACY: u32 = 8;

/// A finished construction together with what it was built from.
#[derive(Debug, Clone)]
pub struct Run {
    pub cert: Certificate,
    pub inputs: Inputs,
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let sc: Scenario = serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        sc.universe()?;
        Ok(sc)
    }

    pub fn universe(&self) -> Result<Interval> {
        let u = parse_interval(&self.universe)?;
        if !u.is_closed() {
            return Err(Error::Scenario(format!("universe {u} is not closed")));
        }
        Ok(u)
    }

    pub fn params(&self) -> Result<RunParams> {
        let epsilon = rational(&self.epsilon)?;
        if epsilon <= num_traits::Zero::zero() {
            return Err(Error::NonPositiveEpsilon(epsilon));
        }
        Ok(RunParams {
            epsilon,
            ladder: self.ladder.unwrap_or(DEFAULT_LADDER),
            accuracy: self.accuracy.unwrap_or(DEFAULT_ACCURACY),
            cap: self.cap.unwrap_or(DEFAULT_CAP),
        })
    }

    /// A named set or a literal.
    pub fn set(&self, name_or_literal: &str) -> Result<IntervalSet> {
        let literal = self.sets.get(name_or_literal).map(String::as_str).unwrap_or(name_or_literal);
        IntervalSet::parse(literal, self.universe()?)
            .map_err(|e| Error::Scenario(format!("set `{name_or_literal}`: {e}")))
    }

    pub fn function(&self, name: &str) -> Result<Function> {
        let spec = self.functions.get(name).ok_or_else(|| Error::Scenario(format!("no function named `{name}`")))?;
        let u = self.universe()?;
        Ok(match spec {
            FunctionSpec::Step { pieces } => {
                let pieces = pieces
                    .iter()
                    .map(|(set, v)| Ok((self.set(set)?, v.parse::<ExtendedRational>()?)))
                    .collect::<Result<Vec<_>>>()?;
                StepFunction::new(u, pieces)?.into()
            }
            FunctionSpec::Pl { pieces } => {
                let pieces = pieces
                    .iter()
                    .map(|(iv, slope, offset)| Ok(LinearPiece::new(parse_interval(iv)?, rational(slope)?, rational(offset)?)))
                    .collect::<Result<Vec<_>>>()?;
                PiecewiseLinear::new(u, pieces)?.into()
            }
            FunctionSpec::Recip { pole, coef, domain } => {
                let d = parse_interval(domain)?;
                let p = rational(pole)?;
                if d.lo() != &p || d.lo_closed() || !d.hi_closed() {
                    return Err(Error::Scenario(format!("reciprocal domain must be (pole, right], got {d}")));
                }
                ReciprocalRamp::new(p, rational(coef)?, d.hi().clone(), u)?.into()
            }
        })
    }

    fn span(&self, a: &Option<String>, b: &Option<String>) -> Result<(Rational, Rational, Interval)> {
        let u = self.universe()?;
        let a = a.as_deref().map(rational).transpose()?.unwrap_or_else(|| u.lo().clone());
        let b = b.as_deref().map(rational).transpose()?.unwrap_or_else(|| u.hi().clone());
        Ok((a, b, u))
    }

    pub fn sequence(&self, name: &str) -> Result<PointwiseSequence> {
        let spec = self.sequences.get(name).ok_or_else(|| Error::Scenario(format!("no sequence named `{name}`")))?;
        let monotone = |limit: Function, fam: Arc<dyn TermFamily>| PointwiseSequence::from_monotone(limit, fam);
        match spec {
            SequenceSpec::RampSpike { a, b } => {
                let (a, b, u) = self.span(a, b)?;
                let fam = RampSpike::new(a, b, u)?;
                monotone(fam.limit(), Arc::new(fam))
            }
            SequenceSpec::XOverN { a, b } => {
                let (a, b, u) = self.span(a, b)?;
                let fam = XOverN::new(a, b, u)?;
                monotone(fam.limit(), Arc::new(fam))
            }
            SequenceSpec::ShrinkingIndicator { a, b, mode } => {
                let (a, b, u) = self.span(a, b)?;
                let fam = ShrinkingIndicator::new(a, b, u)?;
                match mode.unwrap_or(TailMode::Exact) {
                    TailMode::Exact => monotone(fam.limit(), Arc::new(fam)),
                    TailMode::Envelope => PointwiseSequence::from_envelope(
                        fam.limit(),
                        Arc::new(fam.clone()),
                        Arc::new(fam.envelope()),
                        DEFAULT_CHECK_DEPTH,
                    ),
                }
            }
            SequenceSpec::StepDecay { carrier } => {
                let fam = StepDecay::new(self.set(carrier)?, IntervalSet::full(self.universe()?))?;
                monotone(fam.limit(), Arc::new(fam))
            }
            SequenceSpec::Constant { function } => {
                let f = self.function(function)?;
                monotone(f.clone(), Arc::new(ConstantFamily(f)))
            }
            SequenceSpec::Dyadic { function } => {
                let f = self.function(function)?;
                monotone(f.clone(), Arc::new(DyadicFamily::new(f)?))
            }
        }
    }

    /// The objects the task runs on, as the verifier expects them.
    pub fn inputs(&self) -> Result<Inputs> {
        Ok(match self.task {
            Task::Decompose => Inputs::Set(self.set(&self.target)?),
            Task::Bound | Task::LusinStep | Task::Lusin | Task::LusinClassical => {
                Inputs::Function(self.function(&self.target)?)
            }
            Task::Egoroff | Task::EgoroffDini => Inputs::Sequence(self.sequence(&self.target)?),
            Task::Dini => {
                let s = self.sequence(&self.target)?;
                Inputs::Dini { terms: s.terms().clone(), limit: s.limit().clone() }
            }
        })
    }

    pub fn run(&self, p: &RunParams) -> Result<Run> {
        let eps = &p.epsilon;
        let (cert, inputs): (Certificate, Inputs) = match self.task {
            Task::Decompose => {
                let e = self.set(&self.target)?;
                (principle1_decompose(&e, eps)?.into(), Inputs::Set(e))
            }
            Task::Bound => {
                let f = self.function(&self.target)?;
                (fourth_principle(&f, eps, p.cap)?.into(), Inputs::Function(f))
            }
            Task::LusinStep => {
                let f = self.function(&self.target)?;
                let Function::Step(s) = &f else {
                    return Err(Error::KindMismatch(format!("lusin_step needs a step function, got {}", f.kind())));
                };
                (lusin_step(s, eps)?.into(), Inputs::Function(f))
            }
            Task::Lusin | Task::LusinClassical => {
                let f = self.function(&self.target)?;
                let path = if self.task == Task::Lusin { lusin } else { lusin_classical };
                (path(&f, eps, p.accuracy, p.cap)?.into(), Inputs::Function(f))
            }
            Task::Egoroff | Task::EgoroffDini => {
                let s = self.sequence(&self.target)?;
                let path = if self.task == Task::Egoroff { egoroff_classical } else { egoroff_dini };
                (path(&s, eps, p.ladder, p.cap)?.into(), Inputs::Sequence(s))
            }
            Task::Dini => {
                let s = self.sequence(&self.target)?;
                let k = match &self.set {
                    Some(name) => self.set(name)?,
                    None => s.domain().clone(),
                };
                let alg = self.algorithm.unwrap_or(DiniAlgorithm::Sup);
                let cert = dini_index(s.terms().as_ref(), s.limit(), &k, eps, alg, p.cap)?;
                (cert.into(), Inputs::Dini { terms: s.terms().clone(), limit: s.limit().clone() })
            }
        };
        Ok(Run { cert, inputs })
    }
}
