//! Well-typed shrinking by subterm replacement.

use std::collections::HashSet;

use cccc_core::cc;
use cccc_core::syntax::Syntax;
use cccc_core::{SourceTerm as S, TypingEnv};

use crate::terms::{freshen_binders, positions, replace_at};

/// Candidates per round that are type checked.
const CANDIDATE_LIMIT: usize = 300;

/// Smaller terms of type `ty` in `env`, smallest first: literals, subterms
/// of `e`, and `e` with one subterm replaced by one of its own subterms.
pub fn candidates(env: &TypingEnv<S>, e: &S, ty: &S) -> Vec<S> {
    let e = freshen_binders(e, env.names().cloned());
    let size = e.size();
    let mut seen = HashSet::new();
    let mut pool: Vec<S> = Vec::new();
    let mut offer = |t: S, pool: &mut Vec<S>| {
        if t.size() < size && seen.insert(t.to_string()) {
            pool.push(t);
        }
    };
    for lit in [S::True, S::False, S::Bool, S::Star] {
        offer(lit, &mut pool);
    }
    let sites = positions(&e);
    for (_, sub) in sites.iter().skip(1) {
        offer((*sub).clone(), &mut pool);
    }
    for (path, sub) in &sites {
        for (_, inner) in positions(*sub).into_iter().skip(1) {
            offer(replace_at(&e, path, inner.clone()), &mut pool);
        }
    }
    pool.sort_by_key(|t| t.size());
    pool.into_iter()
        .take(CANDIDATE_LIMIT)
        .filter(|t| cc::check(env, t, ty).is_ok())
        .collect()
}

/// Greedy shrinking: repeatedly moves to the first candidate that still
/// fails. Returns the final value and the number of steps taken.
pub fn minimize<X: Clone>(
    start: X,
    mut candidates: impl FnMut(&X) -> Vec<X>,
    mut fails: impl FnMut(&X) -> bool,
    max_steps: usize,
) -> (X, usize) {
    let mut cur = start;
    let mut steps = 0;
    while steps < max_steps {
        match candidates(&cur).into_iter().find(|c| fails(c)) {
            Some(next) => {
                cur = next;
                steps += 1;
            }
            None => break,
        }
    }
    (cur, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_are_well_typed_and_smaller() {
        let e = S::if_(S::app(S::lam("x", S::Bool, S::var("x")), S::True), S::False, S::True);
        let env = TypingEnv::empty();
        let cs = candidates(&env, &e, &S::Bool);
        assert!(!cs.is_empty());
        for c in &cs {
            assert!(c.size() < e.size());
            cc::check(&env, c, &S::Bool).unwrap();
        }
        assert_eq!(cs[0].size(), 1);
    }

    #[test]
    fn minimize_finds_smallest_failing() {
        let e = S::if_(S::True, S::if_(S::False, S::True, S::False), S::True);
        let env = TypingEnv::empty();
        let has_false = |t: &S| t.to_string().contains("false");
        let (out, steps) = minimize(e, |t| candidates(&env, t, &S::Bool), has_false, 50);
        assert_eq!(out, S::False);
        assert!(steps >= 1);
    }
}
