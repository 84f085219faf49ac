use crate::cc::sigma_universe;
use crate::env::{Entry, TypingEnv};
use crate::error::{Fuel, TypeError};
use crate::syntax::{free_vars, subst, TargetTerm as T, Ty, Universe};

use super::equiv::equiv;
use super::open_code;
use super::reduce::whnf;

type Env = TypingEnv<T>;
type Result<R> = std::result::Result<R, TypeError>;

fn universe_ty(u: Universe) -> Ty<T> {
    match u {
        Universe::Star => Ty::Term(T::Star),
        Universe::Box => Ty::Box,
    }
}

/// Infers the type of `e`, returned in weak-head normal form.
pub fn infer(env: &Env, e: &T) -> Result<Ty<T>> {
    infer_with(env, e, &mut Fuel::default())
}

pub fn infer_with(env: &Env, e: &T, fuel: &mut Fuel) -> Result<Ty<T>> {
    let ty = synth(env, e, fuel)?;
    Ok(ty.try_map(|t| whnf(env, &t, fuel))?)
}

/// Checks `e` against `ty`, which must itself be a type or a kind.
pub fn check(env: &Env, e: &T, ty: &T) -> Result<()> {
    let mut fuel = Fuel::default();
    check_type(env, ty, &mut fuel)?;
    check_with(env, e, ty, &mut fuel)
}

/// Checks that `e` is a type or a kind, returning the universe it lives in.
pub fn check_type(env: &Env, e: &T, fuel: &mut Fuel) -> Result<Universe> {
    match synth(env, e, fuel)? {
        Ty::Box => Ok(Universe::Box),
        Ty::Term(t) => match whnf(env, &t, fuel)? {
            T::Star => Ok(Universe::Star),
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

fn check_with(env: &Env, e: &T, ty: &T, fuel: &mut Fuel) -> Result<()> {
    match synth(env, e, fuel)? {
        Ty::Box => Err(TypeError::Mismatch { term: e.to_string(), expected: ty.to_string(), found: "[]".into() }),
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
/// a particular type former fall through to their error case.
fn synth_term(env: &Env, e: &T, fuel: &mut Fuel) -> Result<T> {
    match synth(env, e, fuel)? {
        Ty::Term(t) => Ok(whnf(env, &t, fuel)?),
        Ty::Box => Ok(T::var("[]")),
    }
}

fn synth(env: &Env, e: &T, fuel: &mut Fuel) -> Result<Ty<T>> {
    match e {
        T::Var(x) => env
            .lookup(x)
            .map(|entry| Ty::Term(entry.ty().clone()))
            .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
        T::Star => Ok(Ty::Box),
        T::Bool | T::UnitTy => Ok(Ty::Term(T::Star)),
        T::True | T::False => Ok(Ty::Term(T::Bool)),
        T::UnitVal => Ok(Ty::Term(T::UnitTy)),
        T::Let(x, bound, annot, body) => {
            check_type(env, annot, fuel)?;
            check_with(env, bound, annot, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**body]);
            let inner = env.with_definition(x2.clone(), (**bound).clone(), (**annot).clone());
            let body_ty = synth(&inner, &scoped.pop().unwrap(), fuel)?;
            Ok(body_ty.map(|t| subst(&t, bound, &x2)))
        }
        T::Pi(x, a, b) => {
            check_type(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2, (**a).clone());
            Ok(universe_ty(check_type(&inner, &scoped.pop().unwrap(), fuel)?))
        }
        T::Sigma(x, a, b) => {
            let ua = check_type(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2, (**a).clone());
            let ub = check_type(&inner, &scoped.pop().unwrap(), fuel)?;
            Ok(universe_ty(sigma_universe(ua, ub)))
        }
        T::CodeTy(n, ea, x, xa, result) => {
            check_type(env, ea, fuel)?;
            let (inner, n2, _, xa2, result2) = open_code(env, n, ea, x, xa, result);
            check_type(&env.with_assumption(n2, (**ea).clone()), &xa2, fuel)?;
            Ok(universe_ty(check_type(&inner, &result2, fuel)?))
        }
        T::CodeVal(n, ea, x, xa, body) => {
            let open = free_vars(e);
            if !open.is_empty() {
                return Err(TypeError::OpenCode { term: e.to_string(), names: open });
            }
            // closed code is checked in the empty environment, so nothing
            // from the surrounding scope can leak into its type
            let empty = Env::empty();
            check_type(&empty, ea, fuel)?;
            let (inner, n2, x2, xa2, body2) = open_code(&empty, n, ea, x, xa, body);
            check_type(&empty.with_assumption(n2.clone(), (**ea).clone()), &xa2, fuel)?;
            match synth(&inner, &body2, fuel)? {
                Ty::Box => Err(TypeError::KindNotAllowed { term: body2.to_string(), role: "the body of code" }),
                Ty::Term(t) => Ok(Ty::Term(T::code_ty(n2, (**ea).clone(), x2, xa2, t))),
            }
        }
        T::Clo(code, env_val) => match synth_term(env, code, fuel)? {
            T::CodeTy(n, ea, x, xa, result) => {
                check_with(env, env_val, &ea, fuel)?;
                let pi = T::Pi(x, xa, result);
                Ok(Ty::Term(subst(&pi, env_val, &n)))
            }
            other => Err(TypeError::NotACode { term: code.to_string(), found: other.to_string() }),
        },
        T::App(f, arg) => match synth_term(env, f, fuel)? {
            T::Pi(x, dom, cod) => {
                check_with(env, arg, &dom, fuel)?;
                Ok(Ty::Term(subst(&cod, arg, &x)))
            }
            other => Err(TypeError::NotAFunction { term: f.to_string(), found: other.to_string() }),
        },
        T::Pair(first, second, annot) => {
            let T::Sigma(x, ta, tb) = &**annot else {
                return Err(TypeError::PairAnnotation(annot.to_string()));
            };
            check_type(env, annot, fuel)?;
            check_with(env, first, ta, fuel)?;
            check_with(env, second, &subst(tb, first, x), fuel)?;
            Ok(Ty::Term((**annot).clone()))
        }
        T::Fst(p) => match synth_term(env, p, fuel)? {
            T::Sigma(_, ta, _) => Ok(Ty::Term((*ta).clone())),
            other => Err(TypeError::NotAPair { term: p.to_string(), found: other.to_string() }),
        },
        T::Snd(p) => match synth_term(env, p, fuel)? {
            T::Sigma(x, _, tb) => Ok(Ty::Term(subst(&tb, &T::Fst(p.clone()), &x))),
            other => Err(TypeError::NotAPair { term: p.to_string(), found: other.to_string() }),
        },
        T::If(c, t, f) => {
            check_with(env, c, &T::Bool, fuel)?;
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
