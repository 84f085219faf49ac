//! Linking by substitution, and the check that separately compiled
//! components linked with compiled closing substitutions observe the same
//! booleans as their source counterparts.

use std::collections::HashMap;

use thiserror::Error;

use crate::calculus::Calculus;
use crate::convert::translate_term;
use crate::env::{Entry, TypingEnv};
use crate::error::{Fuel, FuelExhausted, TypeError};
use crate::syntax::{free_vars, subst_many, Name, SourceTerm, Syntax, TargetTerm, Ty};
use crate::{cc, cccc};

/// Closed terms standing for the assumptions of an environment.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosingSubst<T> {
    bindings: Vec<(Name, T)>,
}

impl<T> Default for ClosingSubst<T> {
    fn default() -> Self {
        ClosingSubst { bindings: Vec::new() }
    }
}

impl<T: Syntax> ClosingSubst<T> {
    pub fn new(bindings: Vec<(Name, T)>) -> Self {
        ClosingSubst { bindings }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bindings(&self) -> &[(Name, T)] {
        &self.bindings
    }

    pub fn get(&self, name: &Name) -> Option<&T> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn insert(&mut self, name: Name, term: T) {
        match self.bindings.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = term,
            None => self.bindings.push((name, term)),
        }
    }

    pub fn map<U: Syntax, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<ClosingSubst<U>, E> {
        let bindings = self.bindings.iter().map(|(n, t)| Ok((n.clone(), f(t)?))).collect::<Result<_, E>>()?;
        Ok(ClosingSubst { bindings })
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SubstError {
    #[error("no binding for assumption `{0}`")]
    Missing(Name),
    #[error("`{0}` is not an assumption of the environment")]
    Unknown(Name),
    #[error("binding for `{name}` is not closed: it mentions {}", free.iter().map(|n| format!("`{n}`")).collect::<Vec<_>>().join(", "))]
    NotClosed { name: Name, free: Vec<Name> },
    #[error("binding for `{name}` is ill typed: {error}")]
    IllTyped { name: Name, error: TypeError },
    #[error("target binding for `{0}` is not equivalent to the compiled source binding")]
    NotEquivalent(Name),
}

/// Checks that `subst` maps exactly the assumptions of `env`, each to a
/// closed term of its (substituted) type.
pub fn check_subst<C: Calculus>(env: &TypingEnv<C>, subst: &ClosingSubst<C>) -> Result<(), SubstError> {
    for (name, _) in subst.bindings() {
        if !matches!(env.lookup(name), Some(Entry::Assumption { .. })) {
            return Err(SubstError::Unknown(name.clone()));
        }
    }
    let mut closing = HashMap::new();
    for entry in env.entries() {
        match entry {
            Entry::Assumption { name, ty } => {
                let value = subst.get(name).ok_or_else(|| SubstError::Missing(name.clone()))?;
                let free = free_vars(value);
                if !free.is_empty() {
                    return Err(SubstError::NotClosed { name: name.clone(), free });
                }
                let expected = subst_many(ty, &closing);
                C::check(&TypingEnv::empty(), value, &expected)
                    .map_err(|error| SubstError::IllTyped { name: name.clone(), error })?;
                closing.insert(name.clone(), value.clone());
            }
            Entry::Definition { name, term, .. } => {
                closing.insert(name.clone(), subst_many(term, &closing));
            }
        }
    }
    Ok(())
}

/// Substitutes every mapped name simultaneously.
pub fn link<T: Syntax>(subst: &ClosingSubst<T>, e: &T) -> T {
    let map: HashMap<Name, T> = subst.bindings().iter().cloned().collect();
    subst_many(e, &map)
}

/// Links a component against `subst`, also resolving the definitions of its
/// environment so the result is closed.
pub fn link_program<T: Syntax>(env: &TypingEnv<T>, subst: &ClosingSubst<T>, e: &T) -> T {
    let mut closing: HashMap<Name, T> = HashMap::new();
    for entry in env.entries() {
        let value = match entry {
            Entry::Assumption { name, .. } => subst.get(name).cloned().unwrap_or_else(|| T::var(name.clone())),
            Entry::Definition { term, .. } => subst_many(term, &closing),
        };
        closing.insert(entry.name().clone(), value);
    }
    subst_many(e, &closing)
}

/// The outcome of running both pipelines on one component.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservationReport {
    pub source_value: SourceTerm,
    pub target_value: TargetTerm,
    pub related: bool,
    pub source_steps: u64,
    pub target_steps: u64,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LinkError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Subst(#[from] SubstError),
    #[error(transparent)]
    Fuel(#[from] FuelExhausted),
    #[error("component has type {found}, but only Bool results can be observed")]
    NonGroundType { found: String },
}

/// Compiles each binding of a source closing substitution.
pub fn compile_subst(subst: &ClosingSubst<SourceTerm>) -> Result<ClosingSubst<TargetTerm>, TypeError> {
    subst.map(|t| translate_term(&TypingEnv::empty(), t))
}

/// Links then runs `e` in the source, and compiles, links with the compiled
/// substitution and runs in the target; the two booleans must agree.
pub fn separate_compile_check(
    env: &TypingEnv<SourceTerm>,
    e: &SourceTerm,
    subst: &ClosingSubst<SourceTerm>,
    fuel: Fuel,
) -> Result<ObservationReport, LinkError> {
    let target_subst = compile_subst(subst)?;
    run_both(env, e, subst, &target_subst, fuel)
}

/// As [`separate_compile_check`], but with a target substitution supplied
/// by the caller, which must agree with the compiled one pointwise.
pub fn separate_compile_check_with(
    env: &TypingEnv<SourceTerm>,
    e: &SourceTerm,
    subst: &ClosingSubst<SourceTerm>,
    target_subst: &ClosingSubst<TargetTerm>,
    fuel: Fuel,
) -> Result<ObservationReport, LinkError> {
    let compiled = compile_subst(subst)?;
    for (name, value) in compiled.bindings() {
        let given = target_subst.get(name).ok_or_else(|| SubstError::Missing(name.clone()))?;
        if !cccc::equiv(&TypingEnv::empty(), value, given, &mut fuel.clone())? {
            return Err(SubstError::NotEquivalent(name.clone()).into());
        }
    }
    run_both(env, e, subst, target_subst, fuel)
}

fn run_both(
    env: &TypingEnv<SourceTerm>,
    e: &SourceTerm,
    subst: &ClosingSubst<SourceTerm>,
    target_subst: &ClosingSubst<TargetTerm>,
    fuel: Fuel,
) -> Result<ObservationReport, LinkError> {
    cc::check_env(env)?;
    match cc::infer(env, e)? {
        Ty::Term(SourceTerm::Bool) => {}
        other => return Err(LinkError::NonGroundType { found: other.to_string() }),
    }
    check_subst(env, subst)?;

    let mut source_fuel = fuel;
    let source_value = cc::normalize(&TypingEnv::empty(), &link_program(env, subst, e), &mut source_fuel)?;

    let target_env = crate::convert::translate_env(env)?;
    let compiled = translate_term(env, e)?;
    let mut target_fuel = fuel;
    let linked = link_program(&target_env, target_subst, &compiled);
    let target_value = cccc::normalize(&TypingEnv::empty(), &linked, &mut target_fuel)?;

    let related = match (source_value.as_bool(), target_value.as_bool()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    Ok(ObservationReport {
        source_value,
        target_value,
        related,
        source_steps: source_fuel.used(),
        target_steps: target_fuel.used(),
    })
}
