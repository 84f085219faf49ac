use std::fmt;
use std::str::FromStr;

use cccc_core::surface::parse_file;
use cccc_core::{SourceTerm, TypingEnv};

/// Preset environments that generated terms are typed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvProfile {
    Empty,
    Ground,
    Polymorphic,
    Dependent,
    Definitions,
    Mixed,
    /// Cycles through all of the above by iteration index.
    Rotate,
}

const GROUND: &str = "
(assume b Bool)
(assume f (Pi (x Bool) Bool))
(def not (lam (x Bool) (if x false true)) (Pi (x Bool) Bool))
";

const POLYMORPHIC: &str = "
(assume A *)
(assume a A)
(assume B *)
(assume g (Pi (x A) B))
(def id (lam (X *) (lam (x X) x)) (Pi (X *) (Pi (x X) X)))
(assume k (Pi (X *) (Pi (x X) (Pi (y X) X))))
";

const DEPENDENT: &str = "
(assume A *)
(assume P (Pi (x A) *))
(assume a A)
(assume p (app P a))
(assume q (Sigma (x A) (app P x)))
(def T Bool *)
(def t true T)
";

const DEFINITIONS: &str = "
(def T Bool *)
(def t true T)
(def pick (lam (c T) (if c false t)) (Pi (c T) T))
(assume F (Pi (x Bool) *))
(assume u (app F true))
(def U (Sigma (x Bool) (app F x)) *)
";

const MIXED_EXTRA: &str = "
(assume P (Pi (x A) *))
(assume p (app P a))
(def T Bool *)
(assume s (Sigma (X *) X))
";

impl EnvProfile {
    pub const ALL: [EnvProfile; 6] = [
        EnvProfile::Empty,
        EnvProfile::Ground,
        EnvProfile::Polymorphic,
        EnvProfile::Dependent,
        EnvProfile::Definitions,
        EnvProfile::Mixed,
    ];

    /// The concrete profile used for a given iteration.
    pub fn resolve(self, iteration: u64) -> EnvProfile {
        match self {
            EnvProfile::Rotate => Self::ALL[(iteration % Self::ALL.len() as u64) as usize],
            other => other,
        }
    }

    pub fn env(self) -> TypingEnv<SourceTerm> {
        let text = match self {
            EnvProfile::Empty | EnvProfile::Rotate => String::new(),
            EnvProfile::Ground => GROUND.to_string(),
            EnvProfile::Polymorphic => POLYMORPHIC.to_string(),
            EnvProfile::Dependent => DEPENDENT.to_string(),
            EnvProfile::Definitions => DEFINITIONS.to_string(),
            EnvProfile::Mixed => format!("{GROUND}{POLYMORPHIC}{MIXED_EXTRA}"),
        };
        parse_file::<SourceTerm>(&text).expect("preset environments parse").env()
    }
}

impl fmt::Display for EnvProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnvProfile::Empty => "empty",
            EnvProfile::Ground => "ground",
            EnvProfile::Polymorphic => "polymorphic",
            EnvProfile::Dependent => "dependent",
            EnvProfile::Definitions => "definitions",
            EnvProfile::Mixed => "mixed",
            EnvProfile::Rotate => "rotate",
        })
    }
}

impl FromStr for EnvProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .chain([&EnvProfile::Rotate])
            .find(|p| p.to_string() == s)
            .copied()
            .ok_or_else(|| format!("unknown environment profile `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_depth: usize,
    pub env_profile: EnvProfile,
    pub iterations: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0xC105_0C0D, max_depth: 3, env_profile: EnvProfile::Rotate, iterations: 500 }
    }
}

impl GenConfig {
    /// Seed for one iteration, so iterations can run in any order.
    pub fn iteration_seed(&self, iteration: u64) -> u64 {
        self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(iteration)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cccc_core::cc;

    #[test]
    fn profiles_are_well_formed() {
        for p in EnvProfile::ALL {
            cc::check_env(&p.env()).unwrap_or_else(|e| panic!("{p}: {e}"));
        }
    }

    #[test]
    fn profile_names_round_trip() {
        for p in EnvProfile::ALL {
            assert_eq!(p.to_string().parse::<EnvProfile>().unwrap(), p);
        }
    }
}
