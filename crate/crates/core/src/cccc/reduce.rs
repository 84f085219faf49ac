use std::sync::Arc;

use crate::env::TypingEnv;
use crate::error::{Fuel, FuelExhausted};
use crate::syntax::{subst, TargetTerm as T};

use super::{instantiate_code, open_code};

type Env = TypingEnv<T>;

/// Applies code to its environment and argument.
fn enter(code: &T, env_val: &T, arg: &T) -> Option<T> {
    match code {
        T::CodeVal(n, _, x, xa, body) => Some(instantiate_code(n, xa, x, body, env_val, arg).1),
        _ => None,
    }
}

/// Contracts `e` if it is itself a redex: δ, ζ, closure application, π₁,
/// π₂ or a conditional on a boolean literal.
pub fn head_step(env: &Env, e: &T) -> Option<T> {
    match e {
        T::Var(x) => env.definition_of(x).cloned(),
        T::Let(x, bound, _, body) => Some(subst(&**body, &**bound, x)),
        T::App(f, a) => match &**f {
            T::Clo(code, env_val) => enter(code, env_val, a),
            _ => None,
        },
        T::Fst(p) => match &**p {
            T::Pair(a, _, _) => Some((**a).clone()),
            _ => None,
        },
        T::Snd(p) => match &**p {
            T::Pair(_, b, _) => Some((**b).clone()),
            _ => None,
        },
        T::If(c, t, f) => match &**c {
            T::True => Some((**t).clone()),
            T::False => Some((**f).clone()),
            _ => None,
        },
        _ => None,
    }
}

fn step_first(env: &Env, parts: &[&Arc<T>]) -> Option<(usize, T)> {
    parts.iter().enumerate().find_map(|(i, p)| step(env, p).map(|r| (i, r)))
}

fn replace(parts: &[&Arc<T>], i: usize, new: T) -> Vec<Arc<T>> {
    parts
        .iter()
        .enumerate()
        .map(|(j, p)| if i == j { Arc::new(new.clone()) } else { (*p).clone() })
        .collect()
}

/// One leftmost-outermost reduction step; `None` when `e` is normal.
pub fn step(env: &Env, e: &T) -> Option<T> {
    if let Some(r) = head_step(env, e) {
        return Some(r);
    }
    match e {
        T::Var(_) | T::Star | T::UnitTy | T::UnitVal | T::Bool | T::True | T::False | T::Let(..) => None,
        T::Pi(x, a, b) | T::Sigma(x, a, b) => {
            let rebuild = |x, a, b| match e {
                T::Pi(..) => T::pi(x, a, b),
                _ => T::sigma(x, a, b),
            };
            if let Some(a2) = step(env, a) {
                return Some(rebuild(x.clone(), a2, (**b).clone()));
            }
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2.clone(), (**a).clone());
            let b2 = step(&inner, &scoped.pop().unwrap())?;
            Some(rebuild(x2, (**a).clone(), b2))
        }
        T::CodeTy(n, ea, x, xa, body) | T::CodeVal(n, ea, x, xa, body) => {
            let rebuild = |n, ea, x, xa, body| match e {
                T::CodeTy(..) => T::code_ty(n, ea, x, xa, body),
                _ => T::code(n, ea, x, xa, body),
            };
            if let Some(ea2) = step(env, ea) {
                return Some(rebuild(n.clone(), ea2, x.clone(), (**xa).clone(), (**body).clone()));
            }
            let (inner, n2, x2, xa2, body2) = open_code(env, n, ea, x, xa, body);
            let outer_n = env.with_assumption(n2.clone(), (**ea).clone());
            if let Some(xa3) = step(&outer_n, &xa2) {
                return Some(rebuild(n2, (**ea).clone(), x2, xa3, body2));
            }
            let body3 = step(&inner, &body2)?;
            Some(rebuild(n2, (**ea).clone(), x2, xa2, body3))
        }
        T::App(f, a) | T::Clo(f, a) => {
            let (i, r) = step_first(env, &[f, a])?;
            let mut p = replace(&[f, a], i, r).into_iter();
            let (f2, a2) = (p.next().unwrap(), p.next().unwrap());
            Some(match e {
                T::App(..) => T::App(f2, a2),
                _ => T::Clo(f2, a2),
            })
        }
        T::Pair(a, b, t) | T::If(a, b, t) => {
            let (i, r) = step_first(env, &[a, b, t])?;
            let mut p = replace(&[a, b, t], i, r).into_iter();
            let (a2, b2, t2) = (p.next().unwrap(), p.next().unwrap(), p.next().unwrap());
            Some(match e {
                T::Pair(..) => T::Pair(a2, b2, t2),
                _ => T::If(a2, b2, t2),
            })
        }
        T::Fst(p) => step(env, p).map(T::fst),
        T::Snd(p) => step(env, p).map(T::snd),
    }
}

/// Weak-head normal form.
pub fn whnf(env: &Env, e: &T, fuel: &mut Fuel) -> Result<T, FuelExhausted> {
    let mut cur = e.clone();
    loop {
        let next = match &cur {
            T::Var(x) => env.definition_of(x).cloned(),
            T::Let(x, bound, _, body) => Some(subst(&**body, &**bound, x)),
            T::App(f, a) => match whnf(env, f, fuel)? {
                T::Clo(code, env_val) => {
                    let code = whnf(env, &code, fuel)?;
                    match enter(&code, &env_val, a) {
                        Some(r) => Some(r),
                        None => return Ok(T::app(T::Clo(Arc::new(code), env_val), (**a).clone())),
                    }
                }
                f2 => return Ok(T::App(Arc::new(f2), a.clone())),
            },
            T::Fst(p) => match whnf(env, p, fuel)? {
                T::Pair(a, _, _) => Some((*a).clone()),
                p2 => return Ok(T::fst(p2)),
            },
            T::Snd(p) => match whnf(env, p, fuel)? {
                T::Pair(_, b, _) => Some((*b).clone()),
                p2 => return Ok(T::snd(p2)),
            },
            T::If(c, t, f) => match whnf(env, c, fuel)? {
                T::True => Some((**t).clone()),
                T::False => Some((**f).clone()),
                c2 => return Ok(T::If(Arc::new(c2), t.clone(), f.clone())),
            },
            _ => None,
        };
        match next {
            Some(n) => {
                fuel.tick()?;
                cur = n;
            }
            None => return Ok(cur),
        }
    }
}

/// Full normal form, including inside code bodies.
pub fn normalize(env: &Env, e: &T, fuel: &mut Fuel) -> Result<T, FuelExhausted> {
    let head = whnf(env, e, fuel)?;
    Ok(match &head {
        T::Var(_) | T::Star | T::UnitTy | T::UnitVal | T::Bool | T::True | T::False => head,
        T::Pi(x, a, b) | T::Sigma(x, a, b) => {
            let a2 = normalize(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2.clone(), (**a).clone());
            let b2 = normalize(&inner, &scoped.pop().unwrap(), fuel)?;
            match &head {
                T::Pi(..) => T::pi(x2, a2, b2),
                _ => T::sigma(x2, a2, b2),
            }
        }
        T::CodeTy(n, ea, x, xa, body) | T::CodeVal(n, ea, x, xa, body) => {
            let ea2 = normalize(env, ea, fuel)?;
            let (inner, n2, x2, xa2, body2) = open_code(env, n, ea, x, xa, body);
            let outer_n = env.with_assumption(n2.clone(), (**ea).clone());
            let xa3 = normalize(&outer_n, &xa2, fuel)?;
            let body3 = normalize(&inner, &body2, fuel)?;
            match &head {
                T::CodeTy(..) => T::code_ty(n2, ea2, x2, xa3, body3),
                _ => T::code(n2, ea2, x2, xa3, body3),
            }
        }
        T::App(f, a) => T::app(normalize(env, f, fuel)?, normalize(env, a, fuel)?),
        T::Clo(c, v) => T::clo(normalize(env, c, fuel)?, normalize(env, v, fuel)?),
        T::Pair(a, b, t) => T::pair(
            normalize(env, a, fuel)?,
            normalize(env, b, fuel)?,
            normalize(env, t, fuel)?,
        ),
        T::Fst(p) => T::fst(normalize(env, p, fuel)?),
        T::Snd(p) => T::snd(normalize(env, p, fuel)?),
        T::If(c, t, f) => T::if_(
            normalize(env, c, fuel)?,
            normalize(env, t, fuel)?,
            normalize(env, f, fuel)?,
        ),
        T::Let(..) => unreachable!("whnf contracts let"),
    })
}
