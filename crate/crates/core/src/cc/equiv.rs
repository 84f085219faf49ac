use crate::env::TypingEnv;
use crate::error::{Fuel, FuelExhausted};
use crate::syntax::{alpha_eq, rename, Name, SourceTerm as S};

use super::reduce::whnf;

type Env = TypingEnv<S>;

/// Definitional equivalence: reduction to a common term, up to η for
/// functions.
///
/// Algorithmic: both sides are put in weak-head normal form and compared
/// structurally. When exactly one side is a λ, the other is η-expanded by
/// comparing the body against an application to the bound variable.
pub fn equiv(env: &Env, a: &S, b: &S, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
    if alpha_eq(a, b) {
        return Ok(true);
    }
    let a = whnf(env, a, fuel)?;
    let b = whnf(env, b, fuel)?;
    if alpha_eq(&a, &b) {
        return Ok(true);
    }
    match (&a, &b) {
        (S::Lam(x, ta, ea), S::Lam(y, _, eb)) => {
            let z = env.fresh(x, &[&a, &b]);
            let inner = env.with_assumption(z.clone(), (**ta).clone());
            equiv(&inner, &rename(ea, x, &z), &rename(eb, y, &z), fuel)
        }
        (S::Lam(x, ta, ea), _) => {
            let z = env.fresh(x, &[&a, &b]);
            let inner = env.with_assumption(z.clone(), (**ta).clone());
            equiv(&inner, &rename(ea, x, &z), &S::app(b.clone(), S::Var(z)), fuel)
        }
        (_, S::Lam(y, tb, eb)) => {
            let z = env.fresh(y, &[&a, &b]);
            let inner = env.with_assumption(z.clone(), (**tb).clone());
            equiv(&inner, &S::app(a.clone(), S::Var(z.clone())), &rename(eb, y, &z), fuel)
        }
        (S::Var(x), S::Var(y)) => Ok(x == y),
        (S::Star, S::Star) | (S::Bool, S::Bool) | (S::True, S::True) | (S::False, S::False) => Ok(true),
        (S::Pi(x, a1, b1), S::Pi(y, a2, b2)) | (S::Sigma(x, a1, b1), S::Sigma(y, a2, b2)) => {
            Ok(equiv(env, a1, a2, fuel)? && binder_equiv(env, x, a1, b1, y, b2, &a, &b, fuel)?)
        }
        (S::App(f1, x1), S::App(f2, x2)) => Ok(equiv(env, f1, f2, fuel)? && equiv(env, x1, x2, fuel)?),
        (S::Pair(a1, b1, t1), S::Pair(a2, b2, t2)) => Ok(equiv(env, a1, a2, fuel)?
            && equiv(env, b1, b2, fuel)?
            && equiv(env, t1, t2, fuel)?),
        (S::Fst(p), S::Fst(q)) | (S::Snd(p), S::Snd(q)) => equiv(env, p, q, fuel),
        (S::If(c1, t1, f1), S::If(c2, t2, f2)) => Ok(equiv(env, c1, c2, fuel)?
            && equiv(env, t1, t2, fuel)?
            && equiv(env, f1, f2, fuel)?),
        _ => Ok(false),
    }
}

#[allow(clippy::too_many_arguments)]
fn binder_equiv(
    env: &Env,
    x: &Name,
    annot: &S,
    body1: &S,
    y: &Name,
    body2: &S,
    whole1: &S,
    whole2: &S,
    fuel: &mut Fuel,
) -> Result<bool, FuelExhausted> {
    let z = env.fresh(x, &[whole1, whole2]);
    let inner = env.with_assumption(z.clone(), annot.clone());
    equiv(&inner, &rename(body1, x, &z), &rename(body2, y, &z), fuel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(env: &Env, a: &S, b: &S) -> bool {
        equiv(env, a, b, &mut Fuel::default()).unwrap()
    }

    #[test]
    fn eta_for_functions() {
        let env = Env::empty()
            .with_assumption("A".into(), S::Star)
            .with_assumption("f".into(), S::arrow(S::var("A"), S::var("A")));
        let eta = S::lam("x", S::var("A"), S::app(S::var("f"), S::var("x")));
        assert!(eq(&env, &eta, &S::var("f")));
        assert!(eq(&env, &S::var("f"), &eta));
    }

    #[test]
    fn reflexive_on_open_terms() {
        let e = S::app(S::var("g"), S::fst(S::var("p")));
        assert!(eq(&Env::empty(), &e, &e));
    }

    #[test]
    fn zeta_then_reflexivity() {
        let e = S::let_("x", S::True, S::Bool, S::var("x"));
        assert!(eq(&Env::empty(), &e, &S::True));
    }

    #[test]
    fn distinct_constants_differ() {
        assert!(!eq(&Env::empty(), &S::True, &S::False));
        assert!(!eq(&Env::empty(), &S::Bool, &S::Star));
    }

    #[test]
    fn pi_compares_under_common_binder() {
        let a = S::pi("x", S::Bool, S::if_(S::var("x"), S::Bool, S::Bool));
        let b = S::pi("y", S::Bool, S::if_(S::var("y"), S::Bool, S::Bool));
        assert!(eq(&Env::empty(), &a, &b));
        let c = S::pi("y", S::Bool, S::if_(S::True, S::Bool, S::Bool));
        assert!(eq(&Env::empty(), &c, &S::pi("z", S::Bool, S::Bool)));
    }

    #[test]
    fn lambdas_with_same_body() {
        let a = S::lam("x", S::Bool, S::var("x"));
        let b = S::lam("y", S::Bool, S::if_(S::True, S::var("y"), S::False));
        assert!(eq(&Env::empty(), &a, &b));
    }
}
