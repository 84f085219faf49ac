//! Decompilation of closure-converted terms back into the source calculus.
//!
//! Code becomes a curried two-argument function, a closure becomes the
//! application of that function to its environment, and the unit type gets
//! its Church encoding. Everything else is mapped constructor for
//! constructor. Since the source calculus is consistent and normalizing,
//! a well-typed image is evidence that the target term is well behaved.

use crate::cccc;
use crate::env::{Entry, TypingEnv};
use crate::error::TypeError;
use crate::syntax::{SourceTerm as S, TargetTerm as T, Ty};

/// `Πα:*. Πu:α. α`
pub fn church_unit_ty() -> S {
    S::pi("α", S::Star, S::pi("u", S::var("α"), S::var("α")))
}

/// `λα:*. λu:α. u`
pub fn church_unit() -> S {
    S::lam("α", S::Star, S::lam("u", S::var("α"), S::var("u")))
}

/// Decompiles a term after checking that it is well typed in `env`.
pub fn decompile(env: &TypingEnv<T>, e: &T) -> Result<S, TypeError> {
    cccc::infer(env, e)?;
    Ok(decompile_term(e))
}

/// Decompiles the inferred type of `e` as well. `□` stays `□`.
pub fn decompile_typed(env: &TypingEnv<T>, e: &T) -> Result<(S, Ty<S>), TypeError> {
    let ty = cccc::infer(env, e)?;
    Ok((decompile_term(e), ty.map(|t| decompile_term(&t))))
}

/// The syntactic translation, without checking.
pub fn decompile_term(e: &T) -> S {
    let d = decompile_term;
    match e {
        T::Var(x) => S::Var(x.clone()),
        T::Star => S::Star,
        T::Bool => S::Bool,
        T::True => S::True,
        T::False => S::False,
        T::UnitTy => church_unit_ty(),
        T::UnitVal => church_unit(),
        T::Let(x, bound, annot, body) => S::let_(x.clone(), d(bound), d(annot), d(body)),
        T::Pi(x, a, b) => S::pi(x.clone(), d(a), d(b)),
        T::Sigma(x, a, b) => S::sigma(x.clone(), d(a), d(b)),
        T::App(f, a) => S::app(d(f), d(a)),
        T::Pair(a, b, t) => S::pair(d(a), d(b), d(t)),
        T::Fst(p) => S::fst(d(p)),
        T::Snd(p) => S::snd(d(p)),
        T::If(c, t, f) => S::if_(d(c), d(t), d(f)),
        T::CodeTy(n, ea, x, xa, result) => S::pi(n.clone(), d(ea), S::pi(x.clone(), d(xa), d(result))),
        T::CodeVal(n, ea, x, xa, body) => S::lam(n.clone(), d(ea), S::lam(x.clone(), d(xa), d(body))),
        T::Clo(code, env) => S::app(d(code), d(env)),
    }
}

/// Pointwise decompilation of a checked environment.
pub fn decompile_env(env: &TypingEnv<T>) -> Result<TypingEnv<S>, TypeError> {
    cccc::check_env(env)?;
    let mut out = TypingEnv::empty();
    for entry in env.entries() {
        match entry {
            Entry::Assumption { name, ty } => out.push_assumption(name.clone(), decompile_term(ty)),
            Entry::Definition { name, term, ty } => {
                out.push_definition(name.clone(), decompile_term(term), decompile_term(ty))
            }
        }
    }
    Ok(out)
}

/// A place where the implemented model rules differ from a literal reading
/// of the published figure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureDivergence {
    pub rule: &'static str,
    pub term: String,
    pub note: &'static str,
}

/// Lists every second projection and closure in `e`: the two constructs
/// whose model rules are implemented in corrected form.
pub fn figure_divergences(e: &T) -> Vec<FigureDivergence> {
    fn go(e: &T, out: &mut Vec<FigureDivergence>) {
        match e {
            T::Snd(_) => out.push(FigureDivergence {
                rule: "M-Snd",
                term: e.to_string(),
                note: "typed at the second component with the first projection substituted, not at the first component",
            }),
            T::Clo(..) => out.push(FigureDivergence {
                rule: "M-Clo",
                term: e.to_string(),
                note: "environment substituted for the environment binder, not for the argument binder",
            }),
            _ => {}
        }
        use crate::syntax::Syntax;
        for (_, child) in e.children() {
            go(child, out);
        }
    }
    let mut out = Vec::new();
    go(e, &mut out);
    out
}
