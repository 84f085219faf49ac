//! Type-preserving closure conversion from the source calculus into the
//! closure-converted calculus.
//!
//! Every λ becomes a closure pairing closed code with an environment tuple
//! of the variables it captures. Captured variables are found by [`dfv`],
//! which also pulls in the variables their types depend on, so the
//! environment type is a closed telescope.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::cc;
use crate::env::{Entry, Telescope, TypingEnv};
use crate::error::TypeError;
use crate::syntax::{free_vars, free_vars_all, fresh_name, subst, subst_many, Name, SourceTerm as S, TargetTerm as T, Ty};

/// Result of compiling a well-typed source term.
#[derive(Clone, Debug, PartialEq)]
pub struct CompileOutput {
    pub term: T,
    pub ty: Ty<T>,
    pub env: TypingEnv<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("tuple of {items} items does not match a telescope of {bindings} bindings")]
pub struct ArityMismatch {
    pub items: usize,
    pub bindings: usize,
}

/// The dependent free variables of `e : ty`: every free variable, plus the
/// free variables of their types, transitively. Ordered by position in
/// `env`, which respects dependencies, with one entry per name.
pub fn dfv(env: &TypingEnv<S>, e: &S, ty: &S) -> Result<Telescope<S>, TypeError> {
    dfv_with(env, free_vars_all([e, ty]), |t| t.clone())
}

fn dfv_with(env: &TypingEnv<S>, roots: Vec<Name>, view: impl Fn(&S) -> S) -> Result<Telescope<S>, TypeError> {
    let mut reached: HashSet<Name> = HashSet::new();
    let mut pending = roots;
    while let Some(x) = pending.pop() {
        if reached.contains(&x) {
            continue;
        }
        let entry = env.lookup(&x).ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
        pending.extend(free_vars(&view(entry.ty())));
        reached.insert(x);
    }
    let bindings = env
        .entries()
        .iter()
        .filter(|entry| reached.contains(entry.name()))
        .map(|entry| (entry.name().clone(), view(entry.ty())))
        .collect();
    Ok(Telescope::new(bindings))
}

/// Replaces every defined variable by its definition, repeatedly, until the
/// term mentions assumptions only.
pub fn inline_definitions(env: &TypingEnv<S>, e: &S) -> S {
    let mut cur = e.clone();
    loop {
        let defs: HashMap<Name, S> = free_vars(&cur)
            .into_iter()
            .filter_map(|x| env.definition_of(&x).map(|d| (x, d.clone())))
            .collect();
        if defs.is_empty() {
            return cur;
        }
        cur = subst_many(&cur, &defs);
    }
}

/// Right-nested Σ chain over the telescope, ending in `Unit`.
pub fn sigma_chain(tel: &Telescope<T>) -> T {
    tel.bindings()
        .iter()
        .rev()
        .fold(T::UnitTy, |rest, (x, ty)| T::sigma(x.clone(), ty.clone(), rest))
}

/// Packs `items` into nested pairs ending in `unit`, each pair annotated
/// with the remaining telescope after substituting the earlier items.
pub fn encode_ntuple(items: &[T], tel: &Telescope<T>) -> Result<T, ArityMismatch> {
    if items.len() != tel.len() {
        return Err(ArityMismatch { items: items.len(), bindings: tel.len() });
    }
    fn go(items: &[T], chain: &T) -> T {
        match (items.split_first(), chain) {
            (Some((first, rest)), T::Sigma(x, _, tail)) => {
                let tail = subst(&**tail, first, x);
                T::pair(first.clone(), go(rest, &tail), chain.clone())
            }
            _ => T::UnitVal,
        }
    }
    Ok(go(items, &sigma_chain(tel)))
}

/// Binds each telescope variable to its projection out of `scrutinee`:
/// `let x₀ = fst n : A₀ in let x₁ = fst (snd n) : A₁ in ... body`.
pub fn expand_match(tel: &Telescope<T>, scrutinee: &T, body: T) -> T {
    let mut projections = Vec::with_capacity(tel.len());
    let mut rest = scrutinee.clone();
    for _ in tel.bindings() {
        projections.push(T::fst(rest.clone()));
        rest = T::snd(rest);
    }
    tel.bindings()
        .iter()
        .zip(projections)
        .rev()
        .fold(body, |acc, ((x, ty), proj)| T::let_(x.clone(), proj, ty.clone(), acc))
}

/// Compiles `e`, checking it first. The output type is the translation of
/// the inferred source type.
pub fn translate(env: &TypingEnv<S>, e: &S) -> Result<CompileOutput, TypeError> {
    let ty = cc::infer(env, e)?;
    let term = translate_term(env, e)?;
    let ty = match ty {
        Ty::Box => Ty::Box,
        Ty::Term(t) => Ty::Term(translate_term(env, &t)?),
    };
    Ok(CompileOutput { term, ty, env: translate_env(env)? })
}

/// Translates each entry's type and definition in the environment before it.
pub fn translate_env(env: &TypingEnv<S>) -> Result<TypingEnv<T>, TypeError> {
    let mut prefix = TypingEnv::empty();
    let mut out = TypingEnv::empty();
    for entry in env.entries() {
        let ty = translate_term(&prefix, entry.ty())?;
        match entry {
            Entry::Assumption { name, .. } => out.push_assumption(name.clone(), ty),
            Entry::Definition { name, term, .. } => out.push_definition(name.clone(), translate_term(&prefix, term)?, ty),
        }
        prefix.push(entry.clone());
    }
    Ok(out)
}

/// The translation proper. `e` is assumed well typed in `env`; only λ needs
/// type information, which is inferred on demand.
pub fn translate_term(env: &TypingEnv<S>, e: &S) -> Result<T, TypeError> {
    let tr = |e: &S| translate_term(env, e);
    Ok(match e {
        S::Var(x) => T::Var(x.clone()),
        S::Star => T::Star,
        S::Bool => T::Bool,
        S::True => T::True,
        S::False => T::False,
        S::Let(x, bound, annot, body) => {
            let (x2, mut scoped) = env.open(x, &[&**body]);
            let inner = env.with_definition(x2.clone(), (**bound).clone(), (**annot).clone());
            T::let_(x2, tr(bound)?, tr(annot)?, translate_term(&inner, &scoped.pop().unwrap())?)
        }
        S::Pi(x, a, b) | S::Sigma(x, a, b) => {
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2.clone(), (**a).clone());
            let b2 = translate_term(&inner, &scoped.pop().unwrap())?;
            match e {
                S::Pi(..) => T::pi(x2, tr(a)?, b2),
                _ => T::sigma(x2, tr(a)?, b2),
            }
        }
        S::App(f, a) => T::app(tr(f)?, tr(a)?),
        S::Pair(a, b, t) => T::pair(tr(a)?, tr(b)?, tr(t)?),
        S::Fst(p) => T::fst(tr(p)?),
        S::Snd(p) => T::snd(tr(p)?),
        S::If(c, t, f) => T::if_(tr(c)?, tr(t)?, tr(f)?),
        S::Lam(..) => translate_lambda(env, e)?,
    })
}

fn translate_lambda(env: &TypingEnv<S>, lam: &S) -> Result<T, TypeError> {
    // Definitions are unfolded first: the code is checked in the empty
    // environment, where a captured name would lose its definition.
    let lam = inline_definitions(env, lam);
    let Ty::Term(pi) = cc::infer(env, &lam)? else {
        unreachable!("a λ always has a Π type")
    };
    let pi = inline_definitions(env, &pi);
    let tel = dfv_with(env, free_vars_all([&lam, &pi]), |t| inline_definitions(env, t))?;

    let S::Lam(x, a, body) = &lam else { unreachable!() };
    let (x2, mut scoped) = env.open(x, &[&**body]);
    let inner = env.with_assumption(x2.clone(), (**a).clone());
    let body_t = translate_term(&inner, &scoped.pop().unwrap())?;
    let a_t = translate_term(env, a)?;
    let tel_t = tel.try_map(|ty| translate_term(env, ty))?;

    let taken: HashSet<Name> = free_vars_all([&a_t, &body_t])
        .into_iter()
        .chain(tel.names())
        .chain([x2.clone()])
        .collect();
    let n = fresh_name(&Name::from("n"), |c| taken.contains(c));
    let n_var = T::Var(n.clone());
    let code = T::code(
        n,
        sigma_chain(&tel_t),
        x2,
        expand_match(&tel_t, &n_var, a_t),
        expand_match(&tel_t, &n_var, body_t),
    );
    let captured: Vec<T> = tel.names().into_iter().map(T::Var).collect();
    let env_val = encode_ntuple(&captured, &tel_t).expect("one item per telescope entry");
    Ok(T::clo(code, env_val))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cccc;
    use crate::syntax::alpha_eq;

    fn a_star() -> TypingEnv<S> {
        TypingEnv::empty().with_assumption("A".into(), S::Star)
    }

    #[test]
    fn dfv_of_closed_term_is_empty() {
        let id = S::lam("x", S::Bool, S::var("x"));
        assert!(dfv(&TypingEnv::empty(), &id, &S::arrow(S::Bool, S::Bool)).unwrap().is_empty());
    }

    #[test]
    fn dfv_of_inner_identity() {
        let lam = S::lam("x", S::var("A"), S::var("x"));
        let tel = dfv(&a_star(), &lam, &S::pi("x", S::var("A"), S::var("A"))).unwrap();
        assert_eq!(tel.bindings(), &[("A".into(), S::Star)]);
    }

    #[test]
    fn dfv_follows_types() {
        let env = a_star().with_assumption("a".into(), S::var("A"));
        let tel = dfv(&env, &S::var("a"), &S::var("A")).unwrap();
        assert_eq!(tel.names(), vec![Name::from("A"), Name::from("a")]);
        // ordered by environment position, not by discovery
        let env2 = a_star().with_assumption("b".into(), S::Bool).with_assumption("a".into(), S::var("A"));
        let pair = S::pair(S::var("a"), S::var("b"), S::sigma("_", S::var("A"), S::Bool));
        let tel = dfv(&env2, &pair, &S::sigma("_", S::var("A"), S::Bool)).unwrap();
        assert_eq!(tel.names(), vec![Name::from("A"), Name::from("b"), Name::from("a")]);
        assert!(dfv(&env2, &S::var("z"), &S::Bool).is_err());
    }

    #[test]
    fn ntuple_encoding() {
        let empty = Telescope::new(vec![]);
        assert_eq!(encode_ntuple(&[], &empty).unwrap(), T::UnitVal);
        let one = Telescope::new(vec![("a".into(), T::var("A"))]);
        assert_eq!(
            encode_ntuple(&[T::var("e")], &one).unwrap(),
            T::pair(T::var("e"), T::UnitVal, T::sigma("a", T::var("A"), T::UnitTy))
        );
        assert_eq!(encode_ntuple(&[], &one), Err(ArityMismatch { items: 0, bindings: 1 }));
    }

    #[test]
    fn ntuple_substitutes_earlier_items() {
        let tel = Telescope::new(vec![("B".into(), T::Star), ("b".into(), T::var("B"))]);
        let tuple = encode_ntuple(&[T::Bool, T::True], &tel).unwrap();
        let T::Pair(_, rest, _) = &tuple else { panic!() };
        let T::Pair(_, _, annot) = &**rest else { panic!() };
        assert_eq!(**annot, T::sigma("b", T::Bool, T::UnitTy));
        assert!(cccc::infer(&TypingEnv::empty(), &tuple).is_ok());
    }

    #[test]
    fn match_expansion() {
        let n = T::var("n");
        assert_eq!(expand_match(&Telescope::new(vec![]), &n, T::var("e")), T::var("e"));
        let tel = Telescope::new(vec![("x0".into(), T::Star), ("x1".into(), T::var("x0"))]);
        assert_eq!(
            expand_match(&tel, &n, T::var("e")),
            T::let_(
                "x0",
                T::fst(n.clone()),
                T::Star,
                T::let_("x1", T::fst(T::snd(n.clone())), T::var("x0"), T::var("e"))
            )
        );
    }

    #[test]
    fn closed_lambda() {
        let out = translate(&TypingEnv::empty(), &S::lam("x", S::Bool, S::var("x"))).unwrap();
        let expected = T::clo(T::code("n", T::UnitTy, "x", T::Bool, T::var("x")), T::UnitVal);
        assert_eq!(out.term, expected);
    }

    #[test]
    fn variable() {
        let env = TypingEnv::empty().with_assumption("y".into(), S::Bool);
        assert_eq!(translate(&env, &S::var("y")).unwrap().term, T::var("y"));
    }

    #[test]
    fn polymorphic_identity_preserves_type() {
        let id = S::lam("A", S::Star, S::lam("x", S::var("A"), S::var("x")));
        let out = translate(&TypingEnv::empty(), &id).unwrap();
        let Ty::Term(ty) = &out.ty else { panic!() };
        assert!(alpha_eq(ty, &T::pi("A", T::Star, T::pi("x", T::var("A"), T::var("A")))));
        cccc::check(&out.env, &out.term, ty).unwrap();
    }

    #[test]
    fn definitions_are_inlined_into_code() {
        // T = Bool is needed inside the code to branch on y : T
        let env = TypingEnv::empty().with_definition("T".into(), S::Bool, S::Star);
        let lam = S::lam("y", S::var("T"), S::if_(S::var("y"), S::False, S::True));
        let out = translate(&env, &lam).unwrap();
        let Ty::Term(ty) = &out.ty else { panic!() };
        cccc::check(&out.env, &out.term, ty).unwrap();
    }

    #[test]
    fn environment_translation() {
        assert!(translate_env(&TypingEnv::empty()).unwrap().is_empty());
        let env = a_star().with_definition("b".into(), S::True, S::Bool);
        let out = translate_env(&env).unwrap();
        assert_eq!(out.entries()[0], Entry::Assumption { name: "A".into(), ty: T::Star });
        assert_eq!(out.entries()[1], Entry::Definition { name: "b".into(), term: T::True, ty: T::Bool });
    }
}
