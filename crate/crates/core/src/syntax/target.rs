use std::mem::discriminant;
use std::sync::Arc;

use super::{Name, Syntax};

/// Terms and types of the closure-converted calculus.
///
/// There is no λ: first-class functions are closures `Clo(code, env)` of a
/// `Pi` type, and code takes exactly one environment and one argument.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetTerm {
    Var(Name),
    Star,
    Let(Name, Arc<TargetTerm>, Arc<TargetTerm>, Arc<TargetTerm>),
    /// Closure type.
    Pi(Name, Arc<TargetTerm>, Arc<TargetTerm>),
    App(Arc<TargetTerm>, Arc<TargetTerm>),
    Sigma(Name, Arc<TargetTerm>, Arc<TargetTerm>),
    Pair(Arc<TargetTerm>, Arc<TargetTerm>, Arc<TargetTerm>),
    Fst(Arc<TargetTerm>),
    Snd(Arc<TargetTerm>),
    UnitTy,
    UnitVal,
    /// `Code(n:env_annot, x:arg_annot).result`
    CodeTy(Name, Arc<TargetTerm>, Name, Arc<TargetTerm>, Arc<TargetTerm>),
    /// `λ(n:env_annot, x:arg_annot).body`, well typed only when closed.
    CodeVal(Name, Arc<TargetTerm>, Name, Arc<TargetTerm>, Arc<TargetTerm>),
    Clo(Arc<TargetTerm>, Arc<TargetTerm>),
    Bool,
    True,
    False,
    If(Arc<TargetTerm>, Arc<TargetTerm>, Arc<TargetTerm>),
}

impl TargetTerm {
    pub fn var(x: impl Into<Name>) -> Self {
        TargetTerm::Var(x.into())
    }

    pub fn let_(x: impl Into<Name>, bound: Self, annot: Self, body: Self) -> Self {
        TargetTerm::Let(x.into(), Arc::new(bound), Arc::new(annot), Arc::new(body))
    }

    pub fn pi(x: impl Into<Name>, dom: Self, cod: Self) -> Self {
        TargetTerm::Pi(x.into(), Arc::new(dom), Arc::new(cod))
    }

    pub fn app(f: Self, a: Self) -> Self {
        TargetTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn sigma(x: impl Into<Name>, first: Self, second: Self) -> Self {
        TargetTerm::Sigma(x.into(), Arc::new(first), Arc::new(second))
    }

    pub fn pair(first: Self, second: Self, annot: Self) -> Self {
        TargetTerm::Pair(Arc::new(first), Arc::new(second), Arc::new(annot))
    }

    pub fn fst(e: Self) -> Self {
        TargetTerm::Fst(Arc::new(e))
    }

    pub fn snd(e: Self) -> Self {
        TargetTerm::Snd(Arc::new(e))
    }

    pub fn code_ty(
        env: impl Into<Name>,
        env_annot: Self,
        arg: impl Into<Name>,
        arg_annot: Self,
        result: Self,
    ) -> Self {
        TargetTerm::CodeTy(env.into(), Arc::new(env_annot), arg.into(), Arc::new(arg_annot), Arc::new(result))
    }

    pub fn code(
        env: impl Into<Name>,
        env_annot: Self,
        arg: impl Into<Name>,
        arg_annot: Self,
        body: Self,
    ) -> Self {
        TargetTerm::CodeVal(env.into(), Arc::new(env_annot), arg.into(), Arc::new(arg_annot), Arc::new(body))
    }

    pub fn clo(code: Self, env: Self) -> Self {
        TargetTerm::Clo(Arc::new(code), Arc::new(env))
    }

    pub fn if_(c: Self, t: Self, f: Self) -> Self {
        TargetTerm::If(Arc::new(c), Arc::new(t), Arc::new(f))
    }
}

impl Syntax for TargetTerm {
    fn var(name: Name) -> Self {
        TargetTerm::Var(name)
    }

    fn as_var(&self) -> Option<&Name> {
        match self {
            TargetTerm::Var(x) => Some(x),
            _ => None,
        }
    }

    fn binders(&self) -> Vec<&Name> {
        use TargetTerm::*;
        match self {
            Let(x, ..) | Pi(x, ..) | Sigma(x, ..) => vec![x],
            CodeTy(n, _, x, ..) | CodeVal(n, _, x, ..) => vec![n, x],
            _ => Vec::new(),
        }
    }

    fn children(&self) -> Vec<(usize, &Self)> {
        use TargetTerm::*;
        match self {
            Var(_) | Star | UnitTy | UnitVal | Bool | True | False => Vec::new(),
            Let(_, e, a, body) => vec![(0, &**e), (0, &**a), (1, &**body)],
            Pi(_, a, b) | Sigma(_, a, b) => vec![(0, &**a), (1, &**b)],
            CodeTy(_, env, _, arg, body) | CodeVal(_, env, _, arg, body) => {
                vec![(0, &**env), (1, &**arg), (2, &**body)]
            }
            App(f, a) | Clo(f, a) => vec![(0, &**f), (0, &**a)],
            Pair(a, b, t) | If(a, b, t) => vec![(0, &**a), (0, &**b), (0, &**t)],
            Fst(e) | Snd(e) => vec![(0, &**e)],
        }
    }

    fn rebuild(&self, binders: Vec<Name>, children: Vec<Self>) -> Self {
        use TargetTerm::*;
        let mut b = binders.into_iter();
        let mut c = children.into_iter().map(Arc::new);
        let mut next = || c.next().expect("child count matches constructor");
        match self {
            Var(_) | Star | UnitTy | UnitVal | Bool | True | False => self.clone(),
            Let(..) => Let(b.next().unwrap(), next(), next(), next()),
            Pi(..) => Pi(b.next().unwrap(), next(), next()),
            Sigma(..) => Sigma(b.next().unwrap(), next(), next()),
            CodeTy(..) => {
                let (n, x) = (b.next().unwrap(), b.next().unwrap());
                let (env, arg, body) = (next(), next(), next());
                CodeTy(n, env, x, arg, body)
            }
            CodeVal(..) => {
                let (n, x) = (b.next().unwrap(), b.next().unwrap());
                let (env, arg, body) = (next(), next(), next());
                CodeVal(n, env, x, arg, body)
            }
            App(..) => App(next(), next()),
            Clo(..) => Clo(next(), next()),
            Pair(..) => Pair(next(), next(), next()),
            If(..) => If(next(), next(), next()),
            Fst(_) => Fst(next()),
            Snd(_) => Snd(next()),
        }
    }

    fn same_head(&self, other: &Self) -> bool {
        discriminant(self) == discriminant(other)
    }
}
