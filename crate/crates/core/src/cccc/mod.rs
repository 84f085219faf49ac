//! The closure-converted calculus: the source calculus without λ, extended
//! with closed code, closures and a unit type for empty environments.

mod equiv;
mod reduce;
mod typing;

use std::collections::HashMap;

use crate::env::TypingEnv;
use crate::syntax::{free_vars_all, fresh_name, subst, subst_many, Name, TargetTerm as T};

pub use equiv::equiv;
pub use reduce::{head_step, normalize, step, whnf};
pub use typing::{check, check_env, check_type, infer, infer_with};

/// Instantiates the binders of code `λ(n, x)` (or a code type) with `env_val`
/// and `arg_val` simultaneously, returning the argument annotation (which
/// only sees `n`) and the body (which sees both).
pub(crate) fn instantiate_code(n: &Name, arg_annot: &T, x: &Name, body: &T, env_val: &T, arg_val: &T) -> (T, T) {
    let annot = subst(arg_annot, env_val, n);
    let body = if n == x {
        subst(body, arg_val, x)
    } else {
        let mut map = HashMap::with_capacity(2);
        map.insert(n.clone(), env_val.clone());
        map.insert(x.clone(), arg_val.clone());
        subst_many(body, &map)
    };
    (annot, body)
}

/// Goes under the two binders of a code value or code type. Returns the
/// extended environment, the chosen names, and the renamed annotation and
/// body. Names are kept unless they clash with `env` or with each other.
pub(crate) fn open_code(
    env: &TypingEnv<T>,
    n: &Name,
    env_annot: &T,
    x: &Name,
    arg_annot: &T,
    body: &T,
) -> (TypingEnv<T>, Name, Name, T, T) {
    let fv = free_vars_all([arg_annot, body]);
    let taken = |c: &Name| env.contains(c) || fv.contains(c) || c == x || c == n;
    let n2 = if env.contains(n) { fresh_name(n, taken) } else { n.clone() };
    let x2 = if env.contains(x) || *x == n2 {
        fresh_name(x, |c| taken(c) || *c == n2)
    } else {
        x.clone()
    };
    let (annot, body) = instantiate_code(n, arg_annot, x, body, &T::Var(n2.clone()), &T::Var(x2.clone()));
    let inner = env.with_assumption(n2.clone(), env_annot.clone()).with_assumption(x2.clone(), annot.clone());
    (inner, n2, x2, annot, body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    #[test]
    fn instantiate_is_simultaneous() {
        // the environment mentions a free `x` that must not be captured by the argument
        let body = T::pair(T::var("n"), T::var("x"), T::var("S"));
        let (_, out) = instantiate_code(&"n".into(), &T::UnitTy, &"x".into(), &body, &T::var("x"), &T::True);
        assert_eq!(out, T::pair(T::var("x"), T::True, T::var("S")));
    }

    #[test]
    fn instantiate_with_shadowing_argument() {
        let body = T::var("n");
        let (annot, out) = instantiate_code(&"n".into(), &T::var("n"), &"n".into(), &body, &T::UnitVal, &T::True);
        assert_eq!(annot, T::UnitVal);
        assert_eq!(out, T::True);
    }

    #[test]
    fn open_code_freshens_clashing_names() {
        let env = TypingEnv::empty().with_assumption("n".into(), T::Bool);
        let (inner, n2, x2, _, body) =
            open_code(&env, &"n".into(), &T::UnitTy, &"x".into(), &T::Bool, &T::app(T::var("n"), T::var("x")));
        assert_ne!(n2.as_str(), "n");
        assert_eq!(x2.as_str(), "x");
        assert!(alpha_eq(&body, &T::app(T::Var(n2.clone()), T::var("x"))));
        assert_eq!(inner.len(), 3);
    }
}
