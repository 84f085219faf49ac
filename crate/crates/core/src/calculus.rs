//! A common interface over the two calculi, for code that is generic in the
//! language it processes.

use crate::env::TypingEnv;
use crate::error::{Fuel, FuelExhausted, TypeError};
use crate::surface::SurfaceTerm;
use crate::syntax::{SourceTerm, TargetTerm, Ty};
use crate::{cc, cccc};

pub trait Calculus: SurfaceTerm {
    fn infer_with(env: &TypingEnv<Self>, e: &Self, fuel: &mut Fuel) -> Result<Ty<Self>, TypeError>;

    fn check(env: &TypingEnv<Self>, e: &Self, ty: &Self) -> Result<(), TypeError>;

    fn check_env(env: &TypingEnv<Self>) -> Result<(), TypeError>;

    /// Contracts `e` only if it is itself a redex.
    fn head_step(env: &TypingEnv<Self>, e: &Self) -> Option<Self>;

    fn step(env: &TypingEnv<Self>, e: &Self) -> Option<Self>;

    fn normalize(env: &TypingEnv<Self>, e: &Self, fuel: &mut Fuel) -> Result<Self, FuelExhausted>;

    fn equiv(env: &TypingEnv<Self>, a: &Self, b: &Self, fuel: &mut Fuel) -> Result<bool, FuelExhausted>;

    /// The boolean a term denotes, if it is a boolean literal.
    fn as_bool(&self) -> Option<bool>;

    fn bool_ty() -> Self;

    fn infer(env: &TypingEnv<Self>, e: &Self) -> Result<Ty<Self>, TypeError> {
        Self::infer_with(env, e, &mut Fuel::default())
    }
}

impl Calculus for SourceTerm {
    fn infer_with(env: &TypingEnv<Self>, e: &Self, fuel: &mut Fuel) -> Result<Ty<Self>, TypeError> {
        cc::infer_with(env, e, fuel)
    }

    fn check(env: &TypingEnv<Self>, e: &Self, ty: &Self) -> Result<(), TypeError> {
        cc::check(env, e, ty)
    }

    fn check_env(env: &TypingEnv<Self>) -> Result<(), TypeError> {
        cc::check_env(env)
    }

    fn head_step(env: &TypingEnv<Self>, e: &Self) -> Option<Self> {
        cc::head_step(env, e)
    }

    fn step(env: &TypingEnv<Self>, e: &Self) -> Option<Self> {
        cc::step(env, e)
    }

    fn normalize(env: &TypingEnv<Self>, e: &Self, fuel: &mut Fuel) -> Result<Self, FuelExhausted> {
        cc::normalize(env, e, fuel)
    }

    fn equiv(env: &TypingEnv<Self>, a: &Self, b: &Self, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        cc::equiv(env, a, b, fuel)
    }

    fn as_bool(&self) -> Option<bool> {
        match self {
            SourceTerm::True => Some(true),
            SourceTerm::False => Some(false),
            _ => None,
        }
    }

    fn bool_ty() -> Self {
        SourceTerm::Bool
    }
}

impl Calculus for TargetTerm {
    fn infer_with(env: &TypingEnv<Self>, e: &Self, fuel: &mut Fuel) -> Result<Ty<Self>, TypeError> {
        cccc::infer_with(env, e, fuel)
    }

    fn check(env: &TypingEnv<Self>, e: &Self, ty: &Self) -> Result<(), TypeError> {
        cccc::check(env, e, ty)
    }

    fn check_env(env: &TypingEnv<Self>) -> Result<(), TypeError> {
        cccc::check_env(env)
    }

    fn head_step(env: &TypingEnv<Self>, e: &Self) -> Option<Self> {
        cccc::head_step(env, e)
    }

    fn step(env: &TypingEnv<Self>, e: &Self) -> Option<Self> {
        cccc::step(env, e)
    }

    fn normalize(env: &TypingEnv<Self>, e: &Self, fuel: &mut Fuel) -> Result<Self, FuelExhausted> {
        cccc::normalize(env, e, fuel)
    }

    fn equiv(env: &TypingEnv<Self>, a: &Self, b: &Self, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        cccc::equiv(env, a, b, fuel)
    }

    fn as_bool(&self) -> Option<bool> {
        match self {
            TargetTerm::True => Some(true),
            TargetTerm::False => Some(false),
            _ => None,
        }
    }

    fn bool_ty() -> Self {
        TargetTerm::Bool
    }
}
