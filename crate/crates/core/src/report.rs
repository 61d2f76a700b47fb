//! Reports emitted by the sampled checkers and by the CLI.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// `{check, samples, seed, status, witness?}`. Field order is fixed, so the
/// serialized bytes are a function of the contents alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub samples: u64,
    pub seed: u64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, samples: u64, seed: u64) -> CheckReport {
        CheckReport {
            check: check.into(),
            samples,
            seed,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(check: impl Into<String>, samples: u64, seed: u64, witness: serde_json::Value) -> CheckReport {
        CheckReport {
            check: check.into(),
            samples,
            seed,
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
