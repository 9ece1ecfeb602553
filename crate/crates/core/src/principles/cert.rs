use serde::{Deserialize, Serialize};

use crate::functions::{StepPiece, TailContract};
use crate::interval::{serde_rational, IntervalSet, Rational};

/// `E = K ∪ F` with `K` closed and `m(F) < ε`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCert {
    #[serde(rename = "K")]
    pub k: IntervalSet,
    #[serde(rename = "F")]
    pub f: IntervalSet,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "serde_rational")]
    pub loss: Rational,
}

/// `|f| ≤ bound` on the closed set `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessCert {
    #[serde(rename = "K")]
    pub k: IntervalSet,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "serde_rational")]
    pub loss: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EgoroffPath {
    Classical,
    Dini,
}

/// For every `m ≤ ladder` and every `n ≥ index_table[m-1]`,
/// `|f_n - f| < 1/m` on `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgoroffCert {
    #[serde(rename = "K")]
    pub k: IntervalSet,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    pub ladder: u64,
    pub index_table: Vec<u64>,
    pub proof_path: EgoroffPath,
    #[serde(with = "serde_rational")]
    pub loss: Rational,
    pub tail: TailContract,
}

impl EgoroffCert {
    /// `ν(m)`, 1-based.
    pub fn nu(&self, m: u64) -> u64 {
        self.index_table[(m - 1) as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LusinPath {
    Step,
    Alternative,
    Classical,
}

/// Why `f` restricted to `K` is continuous, or how close it is to a
/// function that is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContinuityWitness {
    /// Each component of `K` sits inside one constant piece; components with
    /// different values are at least `min_gap` apart.
    Separation {
        #[serde(with = "serde_rational::option")]
        min_gap: Option<Rational>,
    },
    /// `|f(x) - f(y)| ≤ lipschitz·|x - y|` within each component of `K`.
    Modulus {
        #[serde(with = "serde_rational")]
        lipschitz: Rational,
    },
    /// `approximant` is continuous on `K` and within `oscillation_bound / 2`
    /// of `f` there.
    FiniteAccuracy {
        accuracy: u32,
        #[serde(with = "serde_rational")]
        oscillation_bound: Rational,
        approximant: Vec<StepPiece>,
    },
}

impl ContinuityWitness {
    pub fn is_exact(&self) -> bool {
        !matches!(self, ContinuityWitness::FiniteAccuracy { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LusinCert {
    #[serde(rename = "K")]
    pub k: IntervalSet,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "serde_rational")]
    pub loss: Rational,
    pub continuity_witness: ContinuityWitness,
    pub proof_path: LusinPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiniAlgorithm {
    Sup,
    Cover,
}

/// `index` is the least `n` with `|f - f_n| < ε` on all of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiniCert {
    #[serde(rename = "K")]
    pub k: IntervalSet,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    pub index: u64,
    pub algorithm: DiniAlgorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_trace: Option<Vec<IntervalSet>>,
}

/// Any certificate, tagged by kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum Certificate {
    Decomposition(DecompositionCert),
    Boundedness(BoundednessCert),
    Egoroff(EgoroffCert),
    Lusin(LusinCert),
    Dini(DiniCert),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Decomposition(_) => "decomposition",
            Certificate::Boundedness(_) => "boundedness",
            Certificate::Egoroff(_) => "egoroff",
            Certificate::Lusin(_) => "lusin",
            Certificate::Dini(_) => "dini",
        }
    }

    pub fn k(&self) -> &IntervalSet {
        match self {
            Certificate::Decomposition(c) => &c.k,
            Certificate::Boundedness(c) => &c.k,
            Certificate::Egoroff(c) => &c.k,
            Certificate::Lusin(c) => &c.k,
            Certificate::Dini(c) => &c.k,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

macro_rules! into_certificate {
    ($($t:ident => $v:ident),*) => {
        $(impl From<$t> for Certificate {
            fn from(c: $t) -> Self {
                Certificate::$v(c)
            }
        })*
    };
}

into_certificate!(
    DecompositionCert => Decomposition,
    BoundednessCert => Boundedness,
    EgoroffCert => Egoroff,
    LusinCert => Lusin,
    DiniCert => Dini
);
