use thiserror::Error;

use crate::syntax::Name;

/// Default number of reduction steps granted to one normalization or one
/// type-checking call.
pub const DEFAULT_FUEL: u64 = 100_000;

/// Step budget for reduction. Every contraction consumes one unit; running
/// out is reported, never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    remaining: u64,
    used: u64,
}

impl Fuel {
    pub fn new(steps: u64) -> Self {
        Fuel { remaining: steps, used: 0 }
    }

    pub fn tick(&mut self) -> Result<(), FuelExhausted> {
        if self.remaining == 0 {
            return Err(FuelExhausted { steps: self.used });
        }
        self.remaining -= 1;
        self.used += 1;
        Ok(())
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(DEFAULT_FUEL)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("reduction fuel exhausted after {steps} steps")]
pub struct FuelExhausted {
    pub steps: u64,
}

/// Type errors of both calculi. Terms are carried in printed form so the
/// error is independent of the language that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("name `{0}` is bound twice in the environment")]
    DuplicateName(Name),
    #[error("expected a type, but `{term}` has type {found}")]
    NotAType { term: String, found: String },
    #[error("`{term}` is a kind and cannot be used as {role}")]
    KindNotAllowed { term: String, role: &'static str },
    #[error("universe mismatch in `{term}`: {detail}")]
    UniverseMismatch { term: String, detail: String },
    #[error("cannot apply `{term}` of non-function type {found}")]
    NotAFunction { term: String, found: String },
    #[error("cannot project from `{term}` of non-pair type {found}")]
    NotAPair { term: String, found: String },
    #[error("closure code `{term}` has non-code type {found}")]
    NotACode { term: String, found: String },
    #[error("pair annotation `{0}` is not a Sigma type")]
    PairAnnotation(String),
    #[error("type mismatch for `{term}`: expected {expected}, found {found}")]
    Mismatch { term: String, expected: String, found: String },
    #[error("code `{term}` is not closed: it mentions {}", names.iter().map(|n| format!("`{n}`")).collect::<Vec<_>>().join(", "))]
    OpenCode { term: String, names: Vec<Name> },
    #[error(transparent)]
    Fuel(#[from] FuelExhausted),
}

impl TypeError {
    pub fn is_open_code(&self) -> bool {
        matches!(self, TypeError::OpenCode { .. })
    }
}
