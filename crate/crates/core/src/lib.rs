//! A dependently typed source calculus, its closure-converted target, the
//! translation between them, and a decompiler from the target back into the
//! source used as a semantic model.

pub mod calculus;
pub mod cc;
pub mod cccc;
pub mod convert;
pub mod env;
pub mod error;
pub mod link;
pub mod model;
pub mod surface;
pub mod syntax;

pub use calculus::Calculus;
pub use env::{Entry, Telescope, TypingEnv};
pub use error::{Fuel, FuelExhausted, TypeError, DEFAULT_FUEL};
pub use syntax::{alpha_eq, free_vars, subst, Name, SourceTerm, TargetTerm, Ty, Universe};
