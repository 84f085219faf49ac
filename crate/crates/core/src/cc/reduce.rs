use std::sync::Arc;

use crate::env::TypingEnv;
use crate::error::{Fuel, FuelExhausted};
use crate::syntax::{subst, SourceTerm as S};

type Env = TypingEnv<S>;

/// Contracts `e` if it is itself a redex: δ, ζ, β, π₁, π₂ or a conditional
/// on a boolean literal.
pub fn head_step(env: &Env, e: &S) -> Option<S> {
    match e {
        S::Var(x) => env.definition_of(x).cloned(),
        S::Let(x, bound, _, body) => Some(subst(&**body, &**bound, x)),
        S::App(f, a) => match &**f {
            S::Lam(x, _, body) => Some(subst(&**body, &**a, x)),
            _ => None,
        },
        S::Fst(p) => match &**p {
            S::Pair(a, _, _) => Some((**a).clone()),
            _ => None,
        },
        S::Snd(p) => match &**p {
            S::Pair(_, b, _) => Some((**b).clone()),
            _ => None,
        },
        S::If(c, t, f) => match &**c {
            S::True => Some((**t).clone()),
            S::False => Some((**f).clone()),
            _ => None,
        },
        _ => None,
    }
}

/// One leftmost-outermost reduction step; `None` when `e` is normal.
pub fn step(env: &Env, e: &S) -> Option<S> {
    if let Some(r) = head_step(env, e) {
        return Some(r);
    }
    match e {
        S::Var(_) | S::Star | S::Bool | S::True | S::False | S::Let(..) => None,
        S::Pi(x, a, b) | S::Lam(x, a, b) | S::Sigma(x, a, b) => {
            let rebuild = |x: crate::syntax::Name, a: S, b: S| match e {
                S::Pi(..) => S::pi(x, a, b),
                S::Lam(..) => S::lam(x, a, b),
                _ => S::sigma(x, a, b),
            };
            if let Some(a2) = step(env, a) {
                return Some(rebuild(x.clone(), a2, (**b).clone()));
            }
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2.clone(), (**a).clone());
            let b2 = step(&inner, &scoped.pop().unwrap())?;
            Some(rebuild(x2, (**a).clone(), b2))
        }
        S::App(f, a) => match step(env, f) {
            Some(f2) => Some(S::App(Arc::new(f2), a.clone())),
            None => step(env, a).map(|a2| S::App(f.clone(), Arc::new(a2))),
        },
        S::Pair(a, b, t) => {
            if let Some(a2) = step(env, a) {
                return Some(S::Pair(Arc::new(a2), b.clone(), t.clone()));
            }
            if let Some(b2) = step(env, b) {
                return Some(S::Pair(a.clone(), Arc::new(b2), t.clone()));
            }
            step(env, t).map(|t2| S::Pair(a.clone(), b.clone(), Arc::new(t2)))
        }
        S::Fst(p) => step(env, p).map(S::fst),
        S::Snd(p) => step(env, p).map(S::snd),
        S::If(c, t, f) => {
            if let Some(c2) = step(env, c) {
                return Some(S::If(Arc::new(c2), t.clone(), f.clone()));
            }
            if let Some(t2) = step(env, t) {
                return Some(S::If(c.clone(), Arc::new(t2), f.clone()));
            }
            step(env, f).map(|f2| S::If(c.clone(), t.clone(), Arc::new(f2)))
        }
    }
}

/// Weak-head normal form: reduces until the head is a constructor, a binder
/// form, or a stuck neutral term.
pub fn whnf(env: &Env, e: &S, fuel: &mut Fuel) -> Result<S, FuelExhausted> {
    let mut cur = e.clone();
    loop {
        let next = match &cur {
            S::Var(x) => env.definition_of(x).cloned(),
            S::Let(x, bound, _, body) => Some(subst(&**body, &**bound, x)),
            S::App(f, a) => {
                let f2 = whnf(env, f, fuel)?;
                match &f2 {
                    S::Lam(x, _, body) => Some(subst(&**body, &**a, x)),
                    _ => return Ok(S::App(Arc::new(f2), a.clone())),
                }
            }
            S::Fst(p) => match whnf(env, p, fuel)? {
                S::Pair(a, _, _) => Some((*a).clone()),
                p2 => return Ok(S::fst(p2)),
            },
            S::Snd(p) => match whnf(env, p, fuel)? {
                S::Pair(_, b, _) => Some((*b).clone()),
                p2 => return Ok(S::snd(p2)),
            },
            S::If(c, t, f) => match whnf(env, c, fuel)? {
                S::True => Some((**t).clone()),
                S::False => Some((**f).clone()),
                c2 => return Ok(S::If(Arc::new(c2), t.clone(), f.clone())),
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

/// Full normal form under all binders, reducing leftmost-outermost first.
pub fn normalize(env: &Env, e: &S, fuel: &mut Fuel) -> Result<S, FuelExhausted> {
    let head = whnf(env, e, fuel)?;
    Ok(match &head {
        S::Var(_) | S::Star | S::Bool | S::True | S::False => head,
        S::Pi(x, a, b) | S::Lam(x, a, b) | S::Sigma(x, a, b) => {
            let a2 = normalize(env, a, fuel)?;
            let (x2, mut scoped) = env.open(x, &[&**b]);
            let inner = env.with_assumption(x2.clone(), (**a).clone());
            let b2 = normalize(&inner, &scoped.pop().unwrap(), fuel)?;
            match &head {
                S::Pi(..) => S::pi(x2, a2, b2),
                S::Lam(..) => S::lam(x2, a2, b2),
                _ => S::sigma(x2, a2, b2),
            }
        }
        S::App(f, a) => S::app(normalize(env, f, fuel)?, normalize(env, a, fuel)?),
        S::Pair(a, b, t) => S::pair(
            normalize(env, a, fuel)?,
            normalize(env, b, fuel)?,
            normalize(env, t, fuel)?,
        ),
        S::Fst(p) => S::fst(normalize(env, p, fuel)?),
        S::Snd(p) => S::snd(normalize(env, p, fuel)?),
        S::If(c, t, f) => S::if_(
            normalize(env, c, fuel)?,
            normalize(env, t, fuel)?,
            normalize(env, f, fuel)?,
        ),
        S::Let(..) => unreachable!("whnf contracts let"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn nf(env: &Env, e: &S) -> S {
        normalize(env, e, &mut Fuel::default()).unwrap()
    }

    #[test]
    fn beta_step() {
        let e = S::app(S::lam("x", S::var("A"), S::app(S::var("f"), S::var("x"))), S::var("e2"));
        let out = step(&Env::empty(), &e).unwrap();
        assert_eq!(out, S::app(S::var("f"), S::var("e2")));
    }

    #[test]
    fn projections_step() {
        let p = S::pair(S::var("e1"), S::var("e2"), S::sigma("x", S::Bool, S::Bool));
        assert_eq!(step(&Env::empty(), &S::fst(p.clone())), Some(S::var("e1")));
        assert_eq!(step(&Env::empty(), &S::snd(p)), Some(S::var("e2")));
    }

    #[test]
    fn star_is_normal() {
        assert_eq!(step(&Env::empty(), &S::Star), None);
        assert_eq!(nf(&Env::empty(), &S::Star), S::Star);
    }

    #[test]
    fn normalize_type_level_beta() {
        let e = S::app(S::lam("A", S::Star, S::var("A")), S::Bool);
        assert_eq!(nf(&Env::empty(), &e), S::Bool);
    }

    #[test]
    fn normalize_delta_then_if() {
        let env = Env::empty().with_definition("x".into(), S::True, S::Bool);
        let e = S::if_(S::var("x"), S::False, S::True);
        assert_eq!(nf(&env, &e), S::False);
    }

    #[test]
    fn step_descends_under_binders_with_definitions_in_scope() {
        // λy:Bool. x  with  x = True  unfolds x under the binder
        let env = Env::empty().with_definition("x".into(), S::True, S::Bool);
        let e = S::lam("y", S::Bool, S::var("x"));
        assert_eq!(step(&env, &e), Some(S::lam("y", S::Bool, S::True)));
    }

    #[test]
    fn binder_clashing_with_definition_is_not_unfolded() {
        // λx:Bool.x under x = True must stay the identity
        let env = Env::empty().with_definition("x".into(), S::True, S::Bool);
        let id = S::lam("x", S::Bool, S::var("x"));
        let out = nf(&env, &id);
        assert!(alpha_eq(&out, &id), "{out:?}");
    }

    #[test]
    fn divergence_runs_out_of_fuel() {
        let w = S::lam("x", S::Bool, S::app(S::var("x"), S::var("x")));
        let omega = S::app(w.clone(), w);
        let err = normalize(&Env::empty(), &omega, &mut Fuel::new(50)).unwrap_err();
        assert_eq!(err.steps, 50);
    }
}
