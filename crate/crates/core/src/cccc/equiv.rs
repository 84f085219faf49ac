use crate::env::TypingEnv;
use crate::error::{Fuel, FuelExhausted};
use crate::syntax::{alpha_eq, fresh_name, occurs_free, rename, subst, Name, TargetTerm as T};

use super::instantiate_code;
use super::reduce::whnf;

type Env = TypingEnv<T>;

/// A closure whose code is a literal code value, taken apart.
struct OpenClosure {
    n: Name,
    x: Name,
    arg_annot: T,
    body: T,
    env_val: T,
}

fn as_closure(env: &Env, e: &T, fuel: &mut Fuel) -> Result<Option<OpenClosure>, FuelExhausted> {
    let T::Clo(code, env_val) = e else { return Ok(None) };
    Ok(match whnf(env, code, fuel)? {
        T::CodeVal(n, _, x, xa, body) => Some(OpenClosure {
            n,
            x,
            arg_annot: (*xa).clone(),
            body: (*body).clone(),
            env_val: (**env_val).clone(),
        }),
        _ => None,
    })
}

/// Definitional equivalence of target terms.
///
/// A closure is compared with any other term by applying both to a fresh
/// variable, which is the closure analogue of η for functions.
pub fn equiv(env: &Env, a: &T, b: &T, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
    if alpha_eq(a, b) {
        return Ok(true);
    }
    let a = whnf(env, a, fuel)?;
    let b = whnf(env, b, fuel)?;
    if alpha_eq(&a, &b) {
        return Ok(true);
    }
    if let Some(clo) = as_closure(env, &a, fuel)? {
        return closure_eta(env, clo, &a, &b, false, fuel);
    }
    if let Some(clo) = as_closure(env, &b, fuel)? {
        return closure_eta(env, clo, &b, &a, true, fuel);
    }
    match (&a, &b) {
        (T::Var(x), T::Var(y)) => Ok(x == y),
        (T::Star, T::Star)
        | (T::Bool, T::Bool)
        | (T::True, T::True)
        | (T::False, T::False)
        | (T::UnitTy, T::UnitTy)
        | (T::UnitVal, T::UnitVal) => Ok(true),
        (T::Pi(x, a1, b1), T::Pi(y, a2, b2)) | (T::Sigma(x, a1, b1), T::Sigma(y, a2, b2)) => {
            if !equiv(env, a1, a2, fuel)? {
                return Ok(false);
            }
            let z = env.fresh(x, &[&a, &b]);
            let inner = env.with_assumption(z.clone(), (**a1).clone());
            equiv(&inner, &rename(b1, x, &z), &rename(b2, y, &z), fuel)
        }
        (T::CodeTy(n1, ea1, x1, xa1, r1), T::CodeTy(n2, ea2, x2, xa2, r2)) => {
            if !equiv(env, ea1, ea2, fuel)? {
                return Ok(false);
            }
            let (zn, zx) = code_names(env, n1, x1, &a, &b);
            let (vn, vx) = (T::Var(zn.clone()), T::Var(zx.clone()));
            let (xa1, r1) = instantiate_code(n1, xa1, x1, r1, &vn, &vx);
            let (xa2, r2) = instantiate_code(n2, xa2, x2, r2, &vn, &vx);
            let with_n = env.with_assumption(zn, (**ea1).clone());
            if !equiv(&with_n, &xa1, &xa2, fuel)? {
                return Ok(false);
            }
            let inner = with_n.with_assumption(zx, xa1);
            equiv(&inner, &r1, &r2, fuel)
        }
        (T::CodeVal(n1, ea1, x1, xa1, e1), T::CodeVal(n2, _, x2, xa2, e2)) => {
            // annotations are not compared, as for λ in the source calculus
            let (zn, zx) = code_names(env, n1, x1, &a, &b);
            let (vn, vx) = (T::Var(zn.clone()), T::Var(zx.clone()));
            let (xa1, e1) = instantiate_code(n1, xa1, x1, e1, &vn, &vx);
            let (_, e2) = instantiate_code(n2, xa2, x2, e2, &vn, &vx);
            let inner = env.with_assumption(zn, (**ea1).clone()).with_assumption(zx, xa1);
            equiv(&inner, &e1, &e2, fuel)
        }
        (T::App(f1, x1), T::App(f2, x2)) | (T::Clo(f1, x1), T::Clo(f2, x2)) => {
            Ok(equiv(env, f1, f2, fuel)? && equiv(env, x1, x2, fuel)?)
        }
        (T::Pair(a1, b1, t1), T::Pair(a2, b2, t2)) | (T::If(a1, b1, t1), T::If(a2, b2, t2)) => {
            Ok(equiv(env, a1, a2, fuel)? && equiv(env, b1, b2, fuel)? && equiv(env, t1, t2, fuel)?)
        }
        (T::Fst(p), T::Fst(q)) | (T::Snd(p), T::Snd(q)) => equiv(env, p, q, fuel),
        _ => Ok(false),
    }
}

/// `clo ≡ other` iff `body[env/n][z/x] ≡ other z` for fresh `z`. When
/// `flipped`, the closure was the right-hand side and sides are swapped back.
fn closure_eta(
    env: &Env,
    clo: OpenClosure,
    whole: &T,
    other: &T,
    flipped: bool,
    fuel: &mut Fuel,
) -> Result<bool, FuelExhausted> {
    let z = env.fresh(&clo.x, &[whole, other]);
    let z_ty = subst(&clo.arg_annot, &clo.env_val, &clo.n);
    let (_, body) = instantiate_code(&clo.n, &clo.arg_annot, &clo.x, &clo.body, &clo.env_val, &T::Var(z.clone()));
    let inner = env.with_assumption(z.clone(), z_ty);
    let applied = T::app(other.clone(), T::Var(z));
    if flipped {
        equiv(&inner, &applied, &body, fuel)
    } else {
        equiv(&inner, &body, &applied, fuel)
    }
}

fn code_names(env: &Env, n: &Name, x: &Name, a: &T, b: &T) -> (Name, Name) {
    let zn = env.fresh(n, &[a, b]);
    let zx = fresh_name(x, |c| *c == zn || env.contains(c) || occurs_free(c, a) || occurs_free(c, b));
    (zn, zx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(env: &Env, a: &T, b: &T) -> bool {
        equiv(env, a, b, &mut Fuel::default()).unwrap()
    }

    fn bool_fn() -> T {
        T::pi("_", T::Bool, T::Bool)
    }

    #[test]
    fn closure_eta_against_variable() {
        // ⟨λ(n, x). f x, ⟨f, ()⟩⟩ ≡ f  with the environment carrying f
        let env_ty = T::sigma("f", bool_fn(), T::UnitTy);
        let code = T::code("n", env_ty.clone(), "x", T::Bool, T::app(T::fst(T::var("n")), T::var("x")));
        let clo = T::clo(code, T::pair(T::var("f"), T::UnitVal, env_ty));
        let env = Env::empty().with_assumption("f".into(), bool_fn());
        assert!(eq(&env, &clo, &T::var("f")));
        assert!(eq(&env, &T::var("f"), &clo));
    }

    #[test]
    fn closures_with_different_environments() {
        // two closures computing the same function from differently shaped environments
        let c1 = T::clo(T::code("n", T::UnitTy, "x", T::Bool, T::var("x")), T::UnitVal);
        let env_ty = T::sigma("b", T::Bool, T::UnitTy);
        let c2 = T::clo(
            T::code("n", env_ty.clone(), "x", T::Bool, T::if_(T::fst(T::var("n")), T::var("x"), T::False)),
            T::pair(T::True, T::UnitVal, env_ty),
        );
        assert!(eq(&Env::empty(), &c1, &c2));
    }

    #[test]
    fn distinct_closures_differ() {
        let c1 = T::clo(T::code("n", T::UnitTy, "x", T::Bool, T::var("x")), T::UnitVal);
        let c2 = T::clo(T::code("n", T::UnitTy, "x", T::Bool, T::True), T::UnitVal);
        assert!(!eq(&Env::empty(), &c1, &c2));
    }

    #[test]
    fn code_types_up_to_renaming() {
        let a = T::code_ty("n", T::UnitTy, "x", T::Star, T::var("x"));
        let b = T::code_ty("m", T::UnitTy, "y", T::Star, T::var("y"));
        assert!(eq(&Env::empty(), &a, &b));
        let c = T::code_ty("m", T::UnitTy, "y", T::Star, T::Bool);
        assert!(!eq(&Env::empty(), &a, &c));
    }

    #[test]
    fn unit_values() {
        assert!(eq(&Env::empty(), &T::UnitVal, &T::UnitVal));
        assert!(!eq(&Env::empty(), &T::UnitTy, &T::UnitVal));
    }
}
