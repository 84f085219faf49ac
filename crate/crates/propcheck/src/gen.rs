//! Goal-directed generation of well-typed source terms.
//!
//! A goal type is put in weak-head normal form and then attacked with a
//! random order of strategies: a variable of that type, an elimination
//! spine headed by a variable, an introduction form matching the goal's
//! shape, or a redex (β, let, conditional, projection of a pair) whose
//! contractum has the goal type. Every strategy builds terms that are well
//! typed by construction; a strategy that cannot finish returns `None` and
//! the next one is tried.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use cccc_core::cc;
use cccc_core::syntax::{rename, subst};
use cccc_core::{Fuel, Name, SourceTerm as S, Ty, TypingEnv};

use crate::config::GenConfig;

type Env = TypingEnv<S>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no inhabitant of {goal} found within the search budget")]
    GiveUp { goal: String },
}

/// Search steps allowed for one attempt.
const BUDGET: usize = 3000;
const ATTEMPTS: usize = 12;

#[derive(Clone, Copy, Debug)]
enum Strategy {
    Var,
    Elim,
    Intro,
    Beta,
    Let,
    If,
    FstPair,
    SndPair,
}

pub struct Gen {
    rng: ChaCha8Rng,
    budget: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), budget: BUDGET }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A term of type `goal`, retrying a few times before giving up.
    pub fn term(&mut self, env: &Env, goal: &S, depth: usize) -> Option<S> {
        (0..ATTEMPTS).find_map(|_| {
            self.budget = BUDGET;
            self.go(env, goal, depth)
        })
    }

    /// A random classifier together with a term it classifies.
    pub fn typed_term(&mut self, env: &Env, depth: usize) -> Option<(S, S)> {
        (0..ATTEMPTS).find_map(|_| {
            self.budget = BUDGET;
            let goal = self.classifier(env, depth)?;
            let e = self.go(env, &goal, depth)?;
            Some((e, goal))
        })
    }

    /// A type whose sort is `*`.
    pub fn small_type(&mut self, env: &Env, depth: usize) -> Option<S> {
        (0..ATTEMPTS).find_map(|_| {
            self.budget = BUDGET;
            self.go(env, &S::Star, depth)
        })
    }

    fn go(&mut self, env: &Env, goal: &S, depth: usize) -> Option<S> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let g = cc::whnf(env, goal, &mut Fuel::default()).ok()?;
        let mut options = vec![(3, Strategy::Var), (4, Strategy::Intro)];
        if depth > 0 {
            options.extend([
                (3, Strategy::Elim),
                (1, Strategy::Beta),
                (1, Strategy::Let),
                (1, Strategy::If),
                (1, Strategy::FstPair),
                (1, Strategy::SndPair),
            ]);
        }
        for s in self.weighted_order(options) {
            if let Some(t) = self.apply(s, env, &g, depth) {
                return Some(t);
            }
        }
        None
    }

    fn weighted_order<X: Copy>(&mut self, mut options: Vec<(u32, X)>) -> Vec<X> {
        let mut out = Vec::with_capacity(options.len());
        while !options.is_empty() {
            let total: u32 = options.iter().map(|(w, _)| w).sum();
            let mut pick = self.rng.gen_range(0..total);
            let i = options
                .iter()
                .position(|(w, _)| {
                    if pick < *w {
                        true
                    } else {
                        pick -= w;
                        false
                    }
                })
                .unwrap();
            out.push(options.remove(i).1);
        }
        out
    }

    fn apply(&mut self, s: Strategy, env: &Env, g: &S, depth: usize) -> Option<S> {
        let d = depth.saturating_sub(1);
        match s {
            Strategy::Var => self.variable(env, g),
            Strategy::Elim => self.elimination(env, g, d),
            Strategy::Intro => self.introduction(env, g, depth),
            Strategy::Beta | Strategy::Let => {
                let t = self.classifier(env, d)?;
                let y = self.binder(env, &t);
                let arg = self.go(env, &t, d)?;
                if let Strategy::Beta = s {
                    let body = self.go(&env.with_assumption(y.clone(), t.clone()), g, d)?;
                    Some(S::app(S::lam(y, t, body), arg))
                } else {
                    let body = self.go(&env.with_definition(y.clone(), arg.clone(), t.clone()), g, d)?;
                    Some(S::let_(y, arg, t, body))
                }
            }
            Strategy::If => {
                let c = self.go(env, &S::Bool, d)?;
                let t = self.go(env, g, d)?;
                let f = self.go(env, g, d)?;
                Some(S::if_(c, t, f))
            }
            Strategy::FstPair => {
                let other = self.go(env, &S::Star, d)?;
                let a = self.go(env, g, d)?;
                let b = self.go(env, &other, d)?;
                let y = env.fresh(&"y".into(), &[]);
                Some(S::fst(S::pair(a, b, S::sigma(y, g.clone(), other))))
            }
            Strategy::SndPair => {
                let other = self.classifier(env, d)?;
                let a = self.go(env, &other, d)?;
                let b = self.go(env, g, d)?;
                let y = env.fresh(&"y".into(), &[]);
                Some(S::snd(S::pair(a, b, S::sigma(y, other, g.clone()))))
            }
        }
    }

    fn equiv(env: &Env, a: &S, b: &S) -> bool {
        cc::equiv(env, a, b, &mut Fuel::default()).unwrap_or(false)
    }

    fn variable(&mut self, env: &Env, g: &S) -> Option<S> {
        let hits: Vec<Name> = env
            .entries()
            .iter()
            .filter(|entry| Self::equiv(env, entry.ty(), g))
            .map(|entry| entry.name().clone())
            .collect();
        hits.choose(&mut self.rng).cloned().map(S::Var)
    }

    /// A spine of applications and projections headed by a variable.
    fn elimination(&mut self, env: &Env, g: &S, depth: usize) -> Option<S> {
        let mut heads: Vec<(Name, S)> = env
            .entries()
            .iter()
            .filter_map(|entry| {
                let ty = cc::whnf(env, entry.ty(), &mut Fuel::default()).ok()?;
                matches!(ty, S::Pi(..) | S::Sigma(..)).then(|| (entry.name().clone(), ty))
            })
            .collect();
        heads.shuffle(&mut self.rng);
        for (name, ty) in heads.into_iter().take(2) {
            if let Some(t) = self.spine(env, g, S::Var(name), ty, depth) {
                return Some(t);
            }
        }
        None
    }

    fn spine(&mut self, env: &Env, g: &S, mut cur: S, mut ty: S, depth: usize) -> Option<S> {
        for _ in 0..4 {
            let next = match &ty {
                S::Pi(x, a, b) => {
                    let arg = self.argument(env, a, g, depth)?;
                    let ty = subst(&**b, &arg, x);
                    (S::app(cur, arg), ty)
                }
                S::Sigma(x, a, b) => {
                    if self.rng.gen_bool(0.5) {
                        (S::fst(cur), (**a).clone())
                    } else {
                        let ty = subst(&**b, &S::fst(cur.clone()), x);
                        (S::snd(cur), ty)
                    }
                }
                _ => return None,
            };
            cur = next.0;
            ty = cc::whnf(env, &next.1, &mut Fuel::default()).ok()?;
            if Self::equiv(env, &ty, g) {
                return Some(cur);
            }
        }
        None
    }

    /// An argument of type `a`; a type argument is often the goal itself,
    /// which is what polymorphic heads usually need.
    fn argument(&mut self, env: &Env, a: &S, g: &S, depth: usize) -> Option<S> {
        let a = cc::whnf(env, a, &mut Fuel::default()).ok()?;
        if a == S::Star && self.rng.gen_bool(0.7) {
            if let Ok(Ty::Term(S::Star)) = cc::infer(env, g) {
                return Some(g.clone());
            }
        }
        self.go(env, &a, depth)
    }

    fn introduction(&mut self, env: &Env, g: &S, depth: usize) -> Option<S> {
        match g {
            S::Pi(x, a, b) => {
                let y = self.binder(env, a);
                let body_ty = rename(&**b, x, &y);
                let body = self.go(&env.with_assumption(y.clone(), (**a).clone()), &body_ty, depth)?;
                Some(S::lam(y, (**a).clone(), body))
            }
            S::Sigma(x, a, b) => {
                let d = depth.saturating_sub(1);
                let first = self.go(env, a, d)?;
                let second = self.go(env, &subst(&**b, &first, x), d)?;
                Some(S::pair(first, second, g.clone()))
            }
            S::Bool => Some(if self.rng.gen_bool(0.5) { S::True } else { S::False }),
            S::Star => self.type_former(env, depth),
            _ => None,
        }
    }

    fn type_former(&mut self, env: &Env, depth: usize) -> Option<S> {
        if depth == 0 {
            return Some(S::Bool);
        }
        let d = depth - 1;
        for choice in self.weighted_order(vec![(2, 0), (3, 1), (1, 2)]) {
            let built = match choice {
                0 => Some(S::Bool),
                1 => (|| {
                    let dom = self.classifier(env, d)?;
                    let y = self.binder(env, &dom);
                    let cod = self.go(&env.with_assumption(y.clone(), dom.clone()), &S::Star, d)?;
                    Some(S::pi(y, dom, cod))
                })(),
                _ => (|| {
                    let first = self.go(env, &S::Star, d)?;
                    let y = self.binder(env, &first);
                    let second = self.go(&env.with_assumption(y.clone(), first.clone()), &S::Star, d)?;
                    Some(S::sigma(y, first, second))
                })(),
            };
            if built.is_some() {
                return built;
            }
        }
        None
    }

    /// A type, or occasionally a kind, to use as a goal or annotation.
    pub fn classifier(&mut self, env: &Env, depth: usize) -> Option<S> {
        match self.rng.gen_range(0..20) {
            0..=2 => Some(S::Star),
            3 => Some(S::pi(env.fresh(&"x".into(), &[]), S::Bool, S::Star)),
            _ => self.go(env, &S::Star, depth),
        }
    }

    /// A binder name not bound in `env`, styled after its annotation.
    fn binder(&mut self, env: &Env, annot: &S) -> Name {
        let is_kind = matches!(cc::infer(env, annot), Ok(Ty::Box));
        let pool: &[&str] = if is_kind { &["X", "Y", "Z"] } else { &["x", "y", "z", "w"] };
        let base = Name::from(*pool.choose(&mut self.rng).unwrap());
        env.fresh(&base, &[])
    }
}

/// A term of type `goal`, or of a randomly chosen type when no goal is
/// given, in `env`.
pub fn gen_term(cfg: &GenConfig, env: &Env, goal: Option<&S>) -> Result<S, GenError> {
    let mut g = Gen::new(cfg.seed);
    match goal {
        Some(goal) => g
            .term(env, goal, cfg.max_depth)
            .ok_or_else(|| GenError::GiveUp { goal: goal.to_string() }),
        None => g
            .typed_term(env, cfg.max_depth)
            .map(|(e, _)| e)
            .ok_or_else(|| GenError::GiveUp { goal: "a random type".into() }),
    }
}
