use serde::{Deserialize, Serialize};

/// A named input of a failing instance, printed in surface syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub role: String,
    pub term: String,
}

impl Input {
    pub fn new(role: &str, term: impl ToString) -> Self {
        Input { role: role.to_string(), term: term.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub property: String,
    pub iteration: u64,
    pub seed: u64,
    pub env_profile: String,
    pub inputs: Vec<Input>,
    /// The relation that was expected to hold.
    pub relation: String,
    pub detail: String,
    /// Shrinking steps that were applied to the original instance.
    pub shrink_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub seed: u64,
    pub iterations: u64,
    /// Instances that were generated and checked, passing or not.
    pub checked: u64,
    pub passed: u64,
    /// Generated instances rejected for not meeting the precondition.
    pub discarded: u64,
    pub failures: Vec<Failure>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// One JSON object per failure, one per line.
    pub fn failure_lines(&self) -> String {
        self.failures
            .iter()
            .map(|f| serde_json::to_string(f).expect("failures serialize") + "\n")
            .collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} checked, {} passed, {} failed, {} discarded (seed {})",
            self.property,
            self.checked,
            self.passed,
            self.failures.len(),
            self.discarded,
            self.seed
        )
    }
}
