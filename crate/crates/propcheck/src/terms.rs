//! Position-based term surgery used by mutation and shrinking.

use std::collections::{HashMap, HashSet};

use cccc_core::cc;
use cccc_core::syntax::{all_names, free_vars, fresh_name, subst_many, Syntax};
use cccc_core::{Calculus, Fuel, Name, SourceTerm as S, Ty, TypingEnv};

/// Path of child indices from the root.
pub type Path = Vec<usize>;

/// Renames every binder in `e` apart from each other and from `avoid`, so
/// no binder shadows another or any name in the environment.
pub fn freshen_binders<T: Syntax>(e: &T, avoid: impl IntoIterator<Item = Name>) -> T {
    let mut taken: HashSet<Name> = all_names(e);
    taken.extend(avoid);
    freshen_go(e, &mut taken)
}

fn freshen_go<T: Syntax>(e: &T, taken: &mut HashSet<Name>) -> T {
    if e.as_var().is_some() {
        return e.clone();
    }
    let binders: Vec<Name> = e.binders().into_iter().cloned().collect();
    let mut fresh = Vec::with_capacity(binders.len());
    for b in &binders {
        let n = fresh_name(b, |c| taken.contains(c));
        taken.insert(n.clone());
        fresh.push(n);
    }
    let children: Vec<T> = e
        .children()
        .into_iter()
        .map(|(depth, c)| {
            let mut map = HashMap::new();
            for i in 0..depth {
                map.insert(binders[i].clone(), T::var(fresh[i].clone()));
            }
            let renamed = subst_many(c, &map);
            freshen_go(&renamed, taken)
        })
        .collect();
    e.rebuild(fresh, children)
}

/// Every subterm with its path, in pre-order.
pub fn positions<T: Syntax>(e: &T) -> Vec<(Path, &T)> {
    fn go<'a, T: Syntax>(e: &'a T, path: &mut Path, out: &mut Vec<(Path, &'a T)>) {
        out.push((path.clone(), e));
        for (i, (_, c)) in e.children().into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(e, &mut Vec::new(), &mut out);
    out
}

pub fn subterm_at<'a, T: Syntax>(e: &'a T, path: &[usize]) -> Option<&'a T> {
    match path.split_first() {
        None => Some(e),
        Some((i, rest)) => subterm_at(e.children().get(*i)?.1, rest),
    }
}

/// `e` with the subterm at `path` replaced, without renaming: callers keep
/// binders distinct (see [`freshen_binders`]).
pub fn replace_at<T: Syntax>(e: &T, path: &[usize], new: T) -> T {
    let Some((i, rest)) = path.split_first() else { return new };
    let binders = e.binders().into_iter().cloned().collect();
    let mut new = Some(new);
    let children = e
        .children()
        .into_iter()
        .enumerate()
        .map(|(j, (_, c))| if j == *i { replace_at(c, rest, new.take().unwrap()) } else { c.clone() })
        .collect();
    e.rebuild(binders, children)
}

/// Every one-step reduct of `e`, one per redex position.
pub fn all_steps<C: Calculus>(env: &TypingEnv<C>, e: &C) -> Vec<C> {
    let e = freshen_binders(e, env.names().cloned());
    positions(&e)
        .into_iter()
        .filter_map(|(path, sub)| C::head_step(env, sub).map(|r| replace_at(&e, &path, r)))
        .collect()
}

/// Subterms of `e` of a Π type, each with its type, after renaming binders
/// apart. Used to pick η-expansion sites.
pub fn function_sites(env: &TypingEnv<S>, e: &S) -> (S, Vec<(Path, S, S)>) {
    let e = freshen_binders(e, env.names().cloned());
    let mut out = Vec::new();
    sites_go(env, &e, &mut Vec::new(), &mut out);
    (e, out)
}

fn sites_go(env: &TypingEnv<S>, e: &S, path: &mut Path, out: &mut Vec<(Path, S, S)>) {
    if let Ok(Ty::Term(ty)) = cc::infer(env, e) {
        if let Ok(S::Pi(..)) = cc::whnf(env, &ty, &mut Fuel::default()) {
            out.push((path.clone(), e.clone(), ty));
        }
    }
    let mut visit = |i: usize, env: &TypingEnv<S>, c: &S, path: &mut Path| {
        path.push(i);
        sites_go(env, c, path, out);
        path.pop();
    };
    match e {
        S::Lam(x, a, b) | S::Pi(x, a, b) | S::Sigma(x, a, b) => {
            visit(0, env, a, path);
            visit(1, &env.with_assumption(x.clone(), (**a).clone()), b, path);
        }
        S::Let(x, bound, annot, body) => {
            visit(0, env, bound, path);
            visit(1, env, annot, path);
            let inner = env.with_definition(x.clone(), (**bound).clone(), (**annot).clone());
            visit(2, &inner, body, path);
        }
        _ => {
            for (i, (_, c)) in e.children().into_iter().enumerate() {
                visit(i, env, c, path);
            }
        }
    }
}

/// `λz:A. f z` for `f` of type `ty`, with `z` fresh.
pub fn eta_expand(env: &TypingEnv<S>, f: &S, ty: &S) -> Option<S> {
    let S::Pi(_, a, _) = cc::whnf(env, ty, &mut Fuel::default()).ok()? else { return None };
    let avoid: Vec<Name> = free_vars(f).into_iter().chain(free_vars(&*a)).collect();
    let z = fresh_name(&Name::from("z"), |n| env.contains(n) || avoid.contains(n));
    Some(S::lam(z.clone(), (*a).clone(), S::app(f.clone(), S::Var(z))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cccc_core::alpha_eq;

    fn id() -> S {
        S::lam("x", S::Bool, S::var("x"))
    }

    #[test]
    fn freshening_preserves_alpha_class() {
        let e = S::lam("x", S::Bool, S::app(S::lam("x", S::Bool, S::var("x")), S::var("x")));
        let f = freshen_binders(&e, [Name::from("x")]);
        assert!(alpha_eq(&e, &f));
        let S::Lam(outer, _, body) = &f else { panic!() };
        let S::App(inner, _) = &**body else { panic!() };
        let S::Lam(inner_x, _, _) = &**inner else { panic!() };
        assert_ne!(outer, inner_x);
        assert_ne!(outer.as_str(), "x");
    }

    #[test]
    fn replace_and_lookup() {
        let e = S::app(id(), S::True);
        assert_eq!(subterm_at(&e, &[1]), Some(&S::True));
        assert_eq!(replace_at(&e, &[1], S::False), S::app(id(), S::False));
        assert_eq!(positions(&e).len(), 5);
    }

    #[test]
    fn every_redex_is_found() {
        let e = S::if_(S::app(id(), S::True), S::fst(S::pair(S::True, S::True, S::sigma("_", S::Bool, S::Bool))), S::False);
        let env = TypingEnv::empty();
        assert_eq!(all_steps(&env, &e).len(), 2);
        assert!(all_steps(&env, &S::True).is_empty());
    }

    #[test]
    fn eta_sites_and_expansion() {
        let env = TypingEnv::empty().with_assumption("f".into(), S::arrow(S::Bool, S::Bool));
        let e = S::app(S::var("f"), S::True);
        let (_, sites) = function_sites(&env, &e);
        assert_eq!(sites.len(), 1);
        let (_, f, ty) = &sites[0];
        let expanded = eta_expand(&env, f, ty).unwrap();
        assert!(cc::equiv(&env, &expanded, f, &mut Fuel::default()).unwrap());
    }
}
