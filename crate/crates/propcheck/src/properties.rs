//! The metatheory properties, run over generated instances.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use cccc_core::convert::{translate_env, translate_term};
use cccc_core::link::{link_program, separate_compile_check, ClosingSubst};
use cccc_core::model::{decompile_env, decompile_term};
use cccc_core::syntax::{alpha_eq, free_vars, occurs_free, subst, Syntax};
use cccc_core::{cc, cccc, Entry, Fuel, Name, SourceTerm as S, TargetTerm as T, TypingEnv};

use crate::config::GenConfig;
use crate::gen::Gen;
use crate::report::{Failure, Input, PropertyReport};
use crate::shrink;
use crate::terms::{all_steps, eta_expand, function_sites};

type Env = TypingEnv<S>;

/// Instances tried per iteration before the iteration counts as unproductive.
const TRIES: usize = 25;
const SHRINK_STEPS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    SubjectReduction,
    TypePreservation,
    CodeClosedness,
    Compositionality,
    ReductionPreservation,
    Coherence,
    ModelTypePreservation,
    ModelReductionPreservation,
    ModelCoherence,
    RoundTrip,
    SeparateCompilation,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::SubjectReduction,
        Property::TypePreservation,
        Property::CodeClosedness,
        Property::Compositionality,
        Property::ReductionPreservation,
        Property::Coherence,
        Property::ModelTypePreservation,
        Property::ModelReductionPreservation,
        Property::ModelCoherence,
        Property::RoundTrip,
        Property::SeparateCompilation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::SubjectReduction => "subject-reduction",
            Property::TypePreservation => "type-preservation",
            Property::CodeClosedness => "code-closedness",
            Property::Compositionality => "compositionality",
            Property::ReductionPreservation => "reduction-preservation",
            Property::Coherence => "coherence",
            Property::ModelTypePreservation => "model-type-preservation",
            Property::ModelReductionPreservation => "model-reduction-preservation",
            Property::ModelCoherence => "model-coherence",
            Property::RoundTrip => "round-trip",
            Property::SeparateCompilation => "separate-compilation",
        }
    }

    /// The relation checked on each instance.
    pub fn relation(self) -> &'static str {
        match self {
            Property::SubjectReduction => "Γ ⊢ e : A and e ⊳ e' imply Γ ⊢ e' : A",
            Property::TypePreservation => "Γ ⊢ e : A implies Γ⁺ ⊢ e⁺ : A⁺",
            Property::CodeClosedness => "every code value in e⁺ is closed",
            Property::Compositionality => "(e1[e2/x])⁺ ≡ e1⁺[e2⁺/x] under Γ⁺",
            Property::ReductionPreservation => "e ⊳ e' implies e⁺ ⊳* t with t ≡ e'⁺",
            Property::Coherence => "e1 ≡ e2 implies e1⁺ ≡ e2⁺",
            Property::ModelTypePreservation => "Γ⁺ ⊢ e : A implies Γ⁺° ⊢ e° : A°",
            Property::ModelReductionPreservation => "e ⊳ e' in the target implies e° ≡ e'°",
            Property::ModelCoherence => "e1 ≡ e2 in the target implies e1° ≡ e2°",
            Property::RoundTrip => "e ≡ (e⁺)°",
            Property::SeparateCompilation => "γ(e) and γ⁺(e⁺) evaluate to the same boolean",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .find(|p| p.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|p| p.name()).collect();
                format!("unknown property `{s}`; expected one of: {}", names.join(", "))
            })
    }
}

/// Property-specific extra data.
#[derive(Clone, Debug)]
enum Aux {
    None,
    /// Drives the choice of redex or mutation, replayed identically when
    /// the term is shrunk.
    Choice(u64),
    Compose { x: Name, e2: S, ty2: S },
    Closing(ClosingSubst<S>),
}

#[derive(Clone, Debug)]
struct Instance {
    env: Env,
    e: S,
    ty: S,
    aux: Aux,
}

enum Outcome {
    Pass,
    Fail(String),
    Discard,
}

impl Instance {
    /// The environment the main term lives in.
    fn term_env(&self) -> Env {
        match &self.aux {
            Aux::Compose { x, ty2, .. } => self.env.with_assumption(x.clone(), ty2.clone()),
            _ => self.env.clone(),
        }
    }

    fn inputs(&self) -> Vec<Input> {
        let mut out = vec![Input::new("env", &self.env), Input::new("e", &self.e), Input::new("type", &self.ty)];
        match &self.aux {
            Aux::None => {}
            Aux::Choice(c) => out.push(Input::new("choice", c)),
            Aux::Compose { x, e2, ty2 } => {
                out.push(Input::new("x", x));
                out.push(Input::new("e2", e2));
                out.push(Input::new("type2", ty2));
            }
            Aux::Closing(gamma) => {
                for (name, term) in gamma.bindings() {
                    out.push(Input::new(&format!("γ({name})"), term));
                }
            }
        }
        out
    }
}

fn fuel() -> Fuel {
    Fuel::default()
}

fn pick<X: Clone>(items: &[X], choice: u64) -> Option<X> {
    (!items.is_empty()).then(|| items[(choice % items.len() as u64) as usize].clone())
}

/// Applies one to three random reductions or η-expansions.
fn mutate(env: &Env, e: &S, rng: &mut ChaCha8Rng) -> S {
    let mut cur = e.clone();
    for _ in 0..rng.gen_range(1..=3) {
        if rng.gen_bool(0.5) {
            if let Some(next) = pick(&all_steps(env, &cur), rng.gen()) {
                cur = next;
                continue;
            }
        }
        let (fresh, sites) = function_sites(env, &cur);
        if let Some((path, f, ty)) = pick(&sites, rng.gen()) {
            if let Some(expanded) = eta_expand(env, &f, &ty) {
                cur = crate::terms::replace_at(&fresh, &path, expanded);
            }
        }
    }
    cur
}

/// Two terms derived from `e` by independent mutation.
fn mutated_pair(env: &Env, e: &S, choice: u64) -> (S, S) {
    let mut rng = ChaCha8Rng::seed_from_u64(choice);
    let a = mutate(env, e, &mut rng);
    let b = mutate(env, e, &mut rng);
    (a, b)
}

fn open_code_in(e: &T) -> Option<String> {
    if let T::CodeVal(..) = e {
        let fv = free_vars(e);
        if !fv.is_empty() {
            let names: Vec<String> = fv.iter().map(|n| n.to_string()).collect();
            return Some(format!("code {e} has free variables {}", names.join(", ")));
        }
    }
    e.children().into_iter().find_map(|(_, c)| open_code_in(c))
}

/// Checks one instance. `Err` carries a failure description.
fn check(prop: Property, inst: &Instance) -> Outcome {
    match check_inner(prop, inst) {
        Ok(o) => o,
        Err(msg) => Outcome::Fail(msg),
    }
}

fn err<E: fmt::Display>(what: &'static str) -> impl Fn(E) -> String {
    move |x| format!("{what}: {x}")
}

fn check_inner(prop: Property, inst: &Instance) -> Result<Outcome, String> {
    let env = &inst.env;
    let e = &inst.e;
    let ty = &inst.ty;
    let tr = |env: &Env, e: &S| translate_term(env, e).map_err(err("translation failed"));
    let tenv = || translate_env(env).map_err(err("environment translation failed"));
    let t_equiv = |tenv: &TypingEnv<T>, a: &T, b: &T| {
        cccc::equiv(tenv, a, b, &mut fuel()).map_err(err("target equivalence"))
    };
    let pass_if = |ok: bool, msg: String| Ok(if ok { Outcome::Pass } else { Outcome::Fail(msg) });

    match prop {
        Property::SubjectReduction => {
            let Aux::Choice(c) = inst.aux else { unreachable!() };
            let Some(reduct) = pick(&all_steps(env, e), c) else { return Ok(Outcome::Discard) };
            match cc::check(env, &reduct, ty) {
                Ok(()) => Ok(Outcome::Pass),
                Err(x) => Ok(Outcome::Fail(format!("reduct {reduct} does not check: {x}"))),
            }
        }
        Property::TypePreservation => {
            let tenv = tenv()?;
            cccc::check_env(&tenv).map_err(err("translated environment is ill formed"))?;
            let et = tr(env, e)?;
            let tyt = tr(env, ty)?;
            match cccc::check(&tenv, &et, &tyt) {
                Ok(()) => Ok(Outcome::Pass),
                Err(x) => Ok(Outcome::Fail(format!("{et} does not check at {tyt}: {x}"))),
            }
        }
        Property::CodeClosedness => {
            let et = tr(env, e)?;
            Ok(match open_code_in(&et) {
                None => Outcome::Pass,
                Some(msg) => Outcome::Fail(msg),
            })
        }
        Property::Compositionality => {
            let Aux::Compose { x, e2, .. } = &inst.aux else { unreachable!() };
            if !occurs_free(x, e) {
                return Ok(Outcome::Discard);
            }
            let lhs = tr(env, &subst(e, e2, x))?;
            let rhs = subst(&tr(&inst.term_env(), e)?, &tr(env, e2)?, x);
            let ok = t_equiv(&tenv()?, &lhs, &rhs)?;
            pass_if(ok, format!("{lhs} is not equivalent to {rhs}"))
        }
        Property::ReductionPreservation => {
            let Aux::Choice(c) = inst.aux else { unreachable!() };
            let Some(reduct) = pick(&all_steps(env, e), c) else { return Ok(Outcome::Discard) };
            let tenv = tenv()?;
            let before = tr(env, e)?;
            let after = tr(env, &reduct)?;
            let t = cccc::normalize(&tenv, &before, &mut fuel()).map_err(err("normalizing e⁺"))?;
            let ok = t_equiv(&tenv, &t, &after)?;
            pass_if(ok, format!("{before} reduces to {t}, which is not equivalent to {after}"))
        }
        Property::Coherence => {
            let Aux::Choice(c) = inst.aux else { unreachable!() };
            let (a, b) = mutated_pair(env, e, c);
            if alpha_eq(&a, &b) {
                return Ok(Outcome::Discard);
            }
            for side in [&a, &b] {
                cc::check(env, side, ty).map_err(|x| format!("mutated term {side} does not check: {x}"))?;
            }
            if !cc::equiv(env, &a, &b, &mut fuel()).map_err(err("source equivalence"))? {
                return Ok(Outcome::Fail(format!("source terms {a} and {b} are not equivalent")));
            }
            let (at, bt) = (tr(env, &a)?, tr(env, &b)?);
            let ok = t_equiv(&tenv()?, &at, &bt)?;
            pass_if(ok, format!("{at} is not equivalent to {bt}"))
        }
        Property::ModelTypePreservation => {
            let tenv = tenv()?;
            let denv = decompile_env(&tenv).map_err(err("decompiling environment"))?;
            let de = decompile_term(&tr(env, e)?);
            let dty = decompile_term(&tr(env, ty)?);
            match cc::check(&denv, &de, &dty) {
                Ok(()) => Ok(Outcome::Pass),
                Err(x) => Ok(Outcome::Fail(format!("{de} does not check at {dty}: {x}"))),
            }
        }
        Property::ModelReductionPreservation => {
            let Aux::Choice(c) = inst.aux else { unreachable!() };
            let tenv = tenv()?;
            let et = tr(env, e)?;
            let Some(reduct) = pick(&all_steps(&tenv, &et), c) else { return Ok(Outcome::Discard) };
            let tyt = tr(env, ty)?;
            cccc::check(&tenv, &reduct, &tyt).map_err(|x| format!("target reduct {reduct} does not check: {x}"))?;
            let denv = decompile_env(&tenv).map_err(err("decompiling environment"))?;
            let (da, db) = (decompile_term(&et), decompile_term(&reduct));
            let ok = cc::equiv(&denv, &da, &db, &mut fuel()).map_err(err("source equivalence"))?;
            pass_if(ok, format!("{da} is not equivalent to {db}"))
        }
        Property::ModelCoherence => {
            let Aux::Choice(c) = inst.aux else { unreachable!() };
            let (a, b) = mutated_pair(env, e, c);
            let tenv = tenv()?;
            let (at, bt) = (tr(env, &a)?, tr(env, &b)?);
            if alpha_eq(&at, &bt) || !t_equiv(&tenv, &at, &bt)? {
                return Ok(Outcome::Discard);
            }
            let denv = decompile_env(&tenv).map_err(err("decompiling environment"))?;
            let (da, db) = (decompile_term(&at), decompile_term(&bt));
            let ok = cc::equiv(&denv, &da, &db, &mut fuel()).map_err(err("source equivalence"))?;
            pass_if(ok, format!("{da} is not equivalent to {db}"))
        }
        Property::RoundTrip => {
            let back = decompile_term(&tr(env, e)?);
            let ok = cc::equiv(env, e, &back, &mut fuel()).map_err(err("source equivalence"))?;
            pass_if(ok, format!("{e} is not equivalent to {back}"))
        }
        Property::SeparateCompilation => {
            let Aux::Closing(gamma) = &inst.aux else { unreachable!() };
            let report = separate_compile_check(env, e, gamma, fuel()).map_err(err("linking"))?;
            pass_if(
                report.related,
                format!("source gives {}, target gives {}", report.source_value, report.target_value),
            )
        }
    }
}

/// A closed value for every assumption of `env`, each at its type with the
/// earlier values and all definitions substituted.
fn closing_subst(g: &mut Gen, env: &Env, depth: usize) -> Option<ClosingSubst<S>> {
    let mut gamma = ClosingSubst::empty();
    for entry in env.entries() {
        if let Entry::Assumption { name, ty } = entry {
            let closed_ty = link_program(&env.prefix_before(name), &gamma, ty);
            let value = g.term(&TypingEnv::empty(), &closed_ty, depth)?;
            gamma.insert(name.clone(), value);
        }
    }
    Some(gamma)
}

fn generate(prop: Property, g: &mut Gen, env: &Env, depth: usize) -> Option<Instance> {
    let choice: u64 = g.rng().gen();
    let (e, ty, aux) = match prop {
        Property::SubjectReduction
        | Property::ReductionPreservation
        | Property::Coherence
        | Property::ModelReductionPreservation
        | Property::ModelCoherence => {
            let (e, ty) = g.typed_term(env, depth)?;
            (e, ty, Aux::Choice(choice))
        }
        Property::Compositionality => {
            let (e2, ty2) = g.typed_term(env, depth.saturating_sub(1))?;
            let x = env.fresh(&"x".into(), &[]);
            let inner = env.with_assumption(x.clone(), ty2.clone());
            let (e1, ty1) = g.typed_term(&inner, depth)?;
            (e1, ty1, Aux::Compose { x, e2, ty2 })
        }
        Property::SeparateCompilation => {
            let e = g.term(env, &S::Bool, depth)?;
            let gamma = closing_subst(g, env, depth.saturating_sub(1))?;
            (e, S::Bool, Aux::Closing(gamma))
        }
        _ => {
            let (e, ty) = g.typed_term(env, depth)?;
            (e, ty, Aux::None)
        }
    };
    Some(Instance { env: env.clone(), e, ty, aux })
}

/// Smaller variants of an instance that still satisfy its typing
/// preconditions.
fn shrink_candidates(inst: &Instance) -> Vec<Instance> {
    let mut out: Vec<Instance> = shrink::candidates(&inst.term_env(), &inst.e, &inst.ty)
        .into_iter()
        .map(|e| Instance { e, ..inst.clone() })
        .collect();
    match &inst.aux {
        Aux::Compose { x, e2, ty2 } => {
            // The main term was typed against ty2, so only e2 may shrink.
            for e2 in shrink::candidates(&inst.env, e2, ty2) {
                out.push(Instance { aux: Aux::Compose { x: x.clone(), e2, ty2: ty2.clone() }, ..inst.clone() });
            }
        }
        Aux::Closing(gamma) => {
            for (i, (name, value)) in gamma.bindings().iter().enumerate() {
                let closed_ty = link_program(&inst.env.prefix_before(name), &ClosingSubst::new(gamma.bindings()[..i].to_vec()), inst.env.lookup(name).unwrap().ty());
                for v in shrink::candidates(&TypingEnv::empty(), value, &closed_ty) {
                    let mut g2 = gamma.clone();
                    g2.insert(name.clone(), v);
                    // Later bindings may be typed against this one.
                    if cccc_core::link::check_subst(&inst.env, &g2).is_ok() {
                        out.push(Instance { aux: Aux::Closing(g2), ..inst.clone() });
                    }
                }
            }
        }
        _ => {}
    }
    out
}

struct IterationResult {
    discarded: u64,
    checked: bool,
    failure: Option<Failure>,
}

fn run_iteration(prop: Property, cfg: &GenConfig, iteration: u64) -> IterationResult {
    let profile = cfg.env_profile.resolve(iteration);
    let env = profile.env();
    let mut g = Gen::new(cfg.iteration_seed(iteration));
    let mut discarded = 0;
    for _ in 0..TRIES {
        let Some(inst) = generate(prop, &mut g, &env, cfg.max_depth) else {
            discarded += 1;
            continue;
        };
        match check(prop, &inst) {
            Outcome::Discard => discarded += 1,
            Outcome::Pass => return IterationResult { discarded, checked: true, failure: None },
            Outcome::Fail(first) => {
                let fails = |i: &Instance| matches!(check(prop, i), Outcome::Fail(_));
                let (small, steps) = shrink::minimize(inst, shrink_candidates, fails, SHRINK_STEPS);
                let detail = match check(prop, &small) {
                    Outcome::Fail(msg) => msg,
                    _ => first,
                };
                let failure = Failure {
                    property: prop.name().to_string(),
                    iteration,
                    seed: cfg.seed,
                    env_profile: profile.to_string(),
                    inputs: small.inputs(),
                    relation: prop.relation().to_string(),
                    detail,
                    shrink_steps: steps,
                };
                return IterationResult { discarded, checked: true, failure: Some(failure) };
            }
        }
    }
    IterationResult { discarded, checked: false, failure: None }
}

/// Runs `prop` for `cfg.iterations` iterations in parallel. Each iteration
/// draws from its own seeded generator and results are merged in iteration
/// order, so reports are identical across runs and thread counts.
pub fn run_property(prop: Property, cfg: &GenConfig) -> PropertyReport {
    let results: Vec<IterationResult> =
        (0..cfg.iterations).into_par_iter().map(|i| run_iteration(prop, cfg, i)).collect();
    let checked = results.iter().filter(|r| r.checked).count() as u64;
    let failures: Vec<Failure> = results.iter().filter_map(|r| r.failure.clone()).collect();
    PropertyReport {
        property: prop.name().to_string(),
        seed: cfg.seed,
        iterations: cfg.iterations,
        checked,
        passed: checked - failures.len() as u64,
        discarded: results.iter().map(|r| r.discarded).sum(),
        failures,
    }
}

/// Runs a property by name.
pub fn run_named(name: &str, cfg: &GenConfig) -> Result<PropertyReport, String> {
    Ok(run_property(name.parse()?, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(iterations: u64) -> GenConfig {
        GenConfig { iterations, ..GenConfig::default() }
    }

    #[test]
    fn names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("nope".parse::<Property>().is_err());
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run_property(Property::RoundTrip, &small(12));
        let b = run_property(Property::RoundTrip, &small(12));
        assert_eq!(a, b);
    }

    #[test]
    fn open_code_is_detected() {
        let code = T::code("n", T::UnitTy, "x", T::Bool, T::var("y"));
        assert!(open_code_in(&T::clo(code, T::UnitVal)).is_some());
        assert!(open_code_in(&T::True).is_none());
    }

    #[test]
    fn a_broken_relation_is_reported_and_shrunk() {
        // Round trip against a deliberately wrong decompilation: only the
        // shrinking machinery is exercised here.
        let env = Env::empty();
        let e = S::if_(S::True, S::app(S::lam("x", S::Bool, S::var("x")), S::False), S::True);
        let fails = |t: &S| t.to_string().contains("false");
        let (out, _) = shrink::minimize(e, |t| shrink::candidates(&env, t, &S::Bool), fails, 20);
        assert_eq!(out, S::False);
    }
}
