use crate::env::{Entry, TypingEnv};
use crate::error::{Fuel, TypeError};
use crate::syntax::{subst, SourceTerm as S, Ty, Universe};

use super::equiv::equiv;
use super::reduce::whnf;

type Env = TypingEnv<S>;
type Result<T> = std::result::Result<T, TypeError>;

/// Universe of a dependent pair. Pairs of types live in `*` only when both
/// components do; anything involving `□` is itself large.
pub(crate) fn sigma_universe(first: Universe, second: Universe) -> Universe {
    if first == Universe::Star && second == Universe::Star {
        Universe::Star
    } else {
        Universe::Box
    }
}

fn universe_ty(u: Universe) -> Ty<S> {
    match u {
        Universe::Star => Ty::Term(S::Star),
        Universe::Box => Ty::Box,
    }
}

/// Infers the type of `e`, returned in weak-head normal form.
pub fn infer(env: &Env, e: &S) -> Result<Ty<S>> {
    infer_with(env, e, &mut Fuel::default())
}

pub fn infer_with(env: &Env, e: &S, fuel: &mut Fuel) -> Result<Ty<S>> {
    let ty = synth(env, e, fuel)?;
    Ok(ty.try_map(|t| whnf(env, &t, fuel))?)
}

/// Checks `e` against `ty`, which must itself be a type or a kind.
pub fn check(env: &Env, e: &S, ty: &S) -> Result<()> {
    let mut fuel = Fuel::default();
    check_type(env, ty, &mut fuel)?;
    check_with(env, e, ty, &mut fuel)
}

/// Checks that `e` is a type or a kind, returning the universe it lives in.
pub fn check_type(env: &Env, e: &S, fuel: &mut Fuel) -> Result<Universe> {
    match synth(env, e, fuel)? {
        Ty::Box => Ok(Universe::Box),
        Ty::Term(t) => match whnf(env, &t, fuel)? {
            S::Star => Ok(Universe::Star),
            other => Err(TypeError::NotAType { term: e.to_string(), found: other.to_string() }),
        },
    }
}

/// Checks every entry against the entries before it.
pub fn check_env(env: &Env) -> Result<()> {
    let mut fuel = Fuel::default();
    let mut prefix = Env::empty();
    for entry in env.entries() {
        if prefix.contains(entry.name()) {
            return Err(TypeError::DuplicateName(entry.name().clone()));
        }
        check_type(&prefix, entry.ty(), &mut fuel)?;
        if let Entry::Definition { term, ty, .. } = entry {
            check_with(&prefix, term, ty, &mut fuel)?;
        }
        prefix.push(entry.clone());
    }
    Ok(())
}

pub(crate) fn check_with(env: &Env, e: &S, ty: &S, fuel: &mut Fuel) -> Result<()> {
    match synth(env, e, fuel)? {
        Ty::Box => Err(TypeError::Mismatch {
            term: e.to_string(),
            expected: ty.to_string(),
            found: "[]".into(),
        }),
        Ty::Term(found) => {
            if equiv(env, &found, ty, fuel)? {
                Ok(())
            } else {
                Err(TypeError::Mismatch { term: e.to_string(), expected: ty.to_string(), found: found.to_string() })
            }
        }
    }
}

/// The weak-head type of `e`; a kind is reported as `[]` so callers expecting
/// a Pi or Sigma fall through to their error case.
fn synth_term(env: &Env, e: &S, fuel: &mut Fuel) -> Result<S> {
    match synth(env, e, fuel)? {
        Ty::Term(t) => Ok(whnf(env, &t, fuel)?),
        Ty::Box => Ok(S::var("[]")),
    }
}

fn synth(env: &Env, e: &S, fuel: &mut Fuel) -> Result<Ty<S>> {
    match e {
        S::Var(x) => env
            .lookup(x)
            .map(|entry| Ty::Term(entry.ty().clone()))
            .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
        S::Star => Ok(Ty::Box),
        S::Bool => Ok(Ty::Term(S::Star)),
        S::True | S::False => Ok(Ty::Term(S::Bool)),
        S::Let(x, bound, annot, body) => {
            check_type(env, annot, fuel)?;
            check_with(env, bound, annot, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**body]);
            let inner = env.with_definition(x2.clone(), (**bound).clone(), (**annot).clone());
            let body_ty = synth(&inner, &scoped.pop().unwrap(), fuel)?;
            Ok(body_ty.map(|t| subst(&t, bound, &x2)))
        }
        S::Pi(x, a, b) => {
            check_type(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2, (**a).clone());
            Ok(universe_ty(check_type(&inner, &scoped.pop().unwrap(), fuel)?))
        }
        S::Sigma(x, a, b) => {
            let ua = check_type(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2, (**a).clone());
            let ub = check_type(&inner, &scoped.pop().unwrap(), fuel)?;
            Ok(universe_ty(sigma_universe(ua, ub)))
        }
        S::Lam(x, a, body) => {
            check_type(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**body]);
            let body = scoped.pop().unwrap();
            let inner = env.with_assumption(x2.clone(), (**a).clone());
            match synth(&inner, &body, fuel)? {
                Ty::Box => Err(TypeError::KindNotAllowed { term: body.to_string(), role: "the body of a function" }),
                Ty::Term(t) => Ok(Ty::Term(S::pi(x2, (**a).clone(), t))),
            }
        }
        S::App(f, arg) => match synth_term(env, f, fuel)? {
            S::Pi(x, dom, cod) => {
                check_with(env, arg, &dom, fuel)?;
                Ok(Ty::Term(subst(&cod, arg, &x)))
            }
            other => Err(TypeError::NotAFunction { term: f.to_string(), found: other.to_string() }),
        },
        S::Pair(first, second, annot) => {
            let S::Sigma(x, ta, tb) = &**annot else {
                return Err(TypeError::PairAnnotation(annot.to_string()));
            };
            check_type(env, annot, fuel)?;
            check_with(env, first, ta, fuel)?;
            check_with(env, second, &subst(tb, first, x), fuel)?;
            Ok(Ty::Term((**annot).clone()))
        }
        S::Fst(p) => match synth_term(env, p, fuel)? {
            S::Sigma(_, ta, _) => Ok(Ty::Term((*ta).clone())),
            other => Err(TypeError::NotAPair { term: p.to_string(), found: other.to_string() }),
        },
        S::Snd(p) => match synth_term(env, p, fuel)? {
            S::Sigma(x, _, tb) => Ok(Ty::Term(subst(&tb, &S::Fst(p.clone()), &x))),
            other => Err(TypeError::NotAPair { term: p.to_string(), found: other.to_string() }),
        },
        S::If(c, t, f) => {
            check_with(env, c, &S::Bool, fuel)?;
            match synth(env, t, fuel)? {
                Ty::Box => Err(TypeError::KindNotAllowed { term: t.to_string(), role: "a conditional branch" }),
                Ty::Term(ty) => {
                    check_with(env, f, &ty, fuel)?;
                    Ok(Ty::Term(ty))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn ty_of(env: &Env, e: &S) -> Ty<S> {
        infer(env, e).unwrap_or_else(|err| panic!("{e} failed: {err}"))
    }

    #[test]
    fn polymorphic_identity() {
        let id = S::lam("A", S::Star, S::lam("x", S::var("A"), S::var("x")));
        let expected = S::pi("A", S::Star, S::pi("x", S::var("A"), S::var("A")));
        let Ty::Term(t) = ty_of(&Env::empty(), &id) else { panic!() };
        assert!(alpha_eq(&t, &expected));
    }

    #[test]
    fn star_has_type_box() {
        assert_eq!(ty_of(&Env::empty(), &S::Star), Ty::Box);
        assert_eq!(ty_of(&Env::empty(), &S::arrow(S::Star, S::Star)), Ty::Box);
        assert_eq!(ty_of(&Env::empty(), &S::pi("A", S::Star, S::var("A"))), Ty::Term(S::Star));
    }

    #[test]
    fn sigma_universes() {
        assert_eq!(ty_of(&Env::empty(), &S::sigma("x", S::Bool, S::Bool)), Ty::Term(S::Star));
        // a pair of a type with a witness is large
        assert_eq!(ty_of(&Env::empty(), &S::sigma("A", S::Star, S::var("A"))), Ty::Box);
        assert_eq!(ty_of(&Env::empty(), &S::sigma("x", S::Bool, S::Star)), Ty::Box);
    }

    #[test]
    fn dependent_pair() {
        let sig = S::sigma("A", S::Star, S::var("A"));
        let p = S::pair(S::Bool, S::True, sig.clone());
        assert_eq!(ty_of(&Env::empty(), &p), Ty::Term(sig.clone()));
        let Ty::Term(t) = ty_of(&Env::empty(), &S::snd(p.clone())) else { panic!() };
        assert_eq!(t, S::Bool);
        let bad = S::pair(S::Bool, S::Star, sig);
        assert!(infer(&Env::empty(), &bad).is_err());
    }

    #[test]
    fn let_substitutes_into_type() {
        let e = S::let_("T", S::Bool, S::Star, S::lam("x", S::var("T"), S::var("x")));
        let Ty::Term(t) = ty_of(&Env::empty(), &e) else { panic!() };
        assert!(alpha_eq(&t, &S::pi("x", S::Bool, S::Bool)));
    }

    #[test]
    fn let_definition_is_visible_to_body() {
        // the body only type checks if T unfolds to Bool
        let e = S::let_("T", S::Bool, S::Star, S::let_("y", S::True, S::var("T"), S::if_(S::var("y"), S::False, S::True)));
        assert_eq!(ty_of(&Env::empty(), &e), Ty::Term(S::Bool));
    }

    #[test]
    fn application_mismatch() {
        let id = S::lam("x", S::Bool, S::var("x"));
        let err = infer(&Env::empty(), &S::app(id, S::Star)).unwrap_err();
        assert!(matches!(err, TypeError::Mismatch { .. }), "{err}");
    }

    #[test]
    fn unbound_variable() {
        assert_eq!(infer(&Env::empty(), &S::var("z")), Err(TypeError::UnboundVariable("z".into())));
    }

    #[test]
    fn lambda_returning_kind_is_rejected() {
        let e = S::lam("x", S::Bool, S::Star);
        assert!(matches!(infer(&Env::empty(), &e), Err(TypeError::KindNotAllowed { .. })));
    }

    #[test]
    fn check_env_rejects_bad_definitions() {
        let good = Env::empty().with_assumption("A".into(), S::Star).with_definition("b".into(), S::True, S::Bool);
        assert!(check_env(&good).is_ok());
        let bad = Env::empty().with_definition("b".into(), S::Star, S::Bool);
        assert!(check_env(&bad).is_err());
    }

    #[test]
    fn binder_shadowing_environment_entry() {
        let env = Env::empty().with_assumption("x".into(), S::Bool);
        let e = S::lam("x", S::Star, S::lam("y", S::var("x"), S::var("y")));
        let Ty::Term(t) = ty_of(&env, &e) else { panic!() };
        assert!(alpha_eq(&t, &S::pi("A", S::Star, S::pi("y", S::var("A"), S::var("A")))));
    }

    #[test]
    fn divergent_type_runs_out_of_fuel() {
        // the argument type is an ill-typed self application which never reaches weak-head form
        let w = S::lam("x", S::Bool, S::app(S::var("x"), S::var("x")));
        let loop_ty = S::app(w.clone(), w);
        let e = S::lam("y", S::Star, S::app(S::lam("z", loop_ty, S::var("z")), S::True));
        assert!(infer(&Env::empty(), &e).is_err());
    }
}
