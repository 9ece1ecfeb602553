use serde::{Deserialize, Serialize};

/// One named check and what it found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Worst sample point, for sampled checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub cert_id: String,
    pub structural_checks: Vec<Check>,
    pub sampled_checks: Vec<Check>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(cert_id: impl Into<String>, structural_checks: Vec<Check>, sampled_checks: Vec<Check>) -> Self {
        let passed = structural_checks.iter().chain(&sampled_checks).all(|c| c.passed);
        VerificationReport {
            cert_id: cert_id.into(),
            structural_checks,
            sampled_checks,
            verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.structural_checks.iter().chain(&self.sampled_checks).filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
