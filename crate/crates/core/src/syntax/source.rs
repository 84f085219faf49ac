use std::mem::discriminant;
use std::sync::Arc;

use super::{Name, Syntax};

/// Terms and types of the source calculus: the Calculus of Constructions
/// with strong dependent pairs, `let`, and a ground type of booleans.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceTerm {
    Var(Name),
    Star,
    /// `let x = bound : annot in body`
    Let(Name, Arc<SourceTerm>, Arc<SourceTerm>, Arc<SourceTerm>),
    Pi(Name, Arc<SourceTerm>, Arc<SourceTerm>),
    Lam(Name, Arc<SourceTerm>, Arc<SourceTerm>),
    App(Arc<SourceTerm>, Arc<SourceTerm>),
    Sigma(Name, Arc<SourceTerm>, Arc<SourceTerm>),
    /// `⟨first, second⟩ as annot`; the annotation is a `Sigma`.
    Pair(Arc<SourceTerm>, Arc<SourceTerm>, Arc<SourceTerm>),
    Fst(Arc<SourceTerm>),
    Snd(Arc<SourceTerm>),
    Bool,
    True,
    False,
    If(Arc<SourceTerm>, Arc<SourceTerm>, Arc<SourceTerm>),
}

impl SourceTerm {
    pub fn var(x: impl Into<Name>) -> Self {
        SourceTerm::Var(x.into())
    }

    pub fn let_(x: impl Into<Name>, bound: Self, annot: Self, body: Self) -> Self {
        SourceTerm::Let(x.into(), Arc::new(bound), Arc::new(annot), Arc::new(body))
    }

    pub fn pi(x: impl Into<Name>, dom: Self, cod: Self) -> Self {
        SourceTerm::Pi(x.into(), Arc::new(dom), Arc::new(cod))
    }

    /// Non-dependent function type `dom -> cod`, using `_` as binder.
    pub fn arrow(dom: Self, cod: Self) -> Self {
        SourceTerm::pi("_", dom, cod)
    }

    pub fn lam(x: impl Into<Name>, annot: Self, body: Self) -> Self {
        SourceTerm::Lam(x.into(), Arc::new(annot), Arc::new(body))
    }

    pub fn app(f: Self, a: Self) -> Self {
        SourceTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn sigma(x: impl Into<Name>, first: Self, second: Self) -> Self {
        SourceTerm::Sigma(x.into(), Arc::new(first), Arc::new(second))
    }

    pub fn pair(first: Self, second: Self, annot: Self) -> Self {
        SourceTerm::Pair(Arc::new(first), Arc::new(second), Arc::new(annot))
    }

    pub fn fst(e: Self) -> Self {
        SourceTerm::Fst(Arc::new(e))
    }

    pub fn snd(e: Self) -> Self {
        SourceTerm::Snd(Arc::new(e))
    }

    pub fn if_(c: Self, t: Self, f: Self) -> Self {
        SourceTerm::If(Arc::new(c), Arc::new(t), Arc::new(f))
    }
}

impl Syntax for SourceTerm {
    fn var(name: Name) -> Self {
        SourceTerm::Var(name)
    }

    fn as_var(&self) -> Option<&Name> {
        match self {
            SourceTerm::Var(x) => Some(x),
            _ => None,
        }
    }

    fn binders(&self) -> Vec<&Name> {
        use SourceTerm::*;
        match self {
            Let(x, ..) | Pi(x, ..) | Lam(x, ..) | Sigma(x, ..) => vec![x],
            _ => Vec::new(),
        }
    }

    fn children(&self) -> Vec<(usize, &Self)> {
        use SourceTerm::*;
        match self {
            Var(_) | Star | Bool | True | False => Vec::new(),
            Let(_, e, a, body) => vec![(0, &**e), (0, &**a), (1, &**body)],
            Pi(_, a, b) | Lam(_, a, b) | Sigma(_, a, b) => vec![(0, &**a), (1, &**b)],
            App(f, a) => vec![(0, &**f), (0, &**a)],
            Pair(a, b, t) | If(a, b, t) => vec![(0, &**a), (0, &**b), (0, &**t)],
            Fst(e) | Snd(e) => vec![(0, &**e)],
        }
    }

    fn rebuild(&self, binders: Vec<Name>, children: Vec<Self>) -> Self {
        use SourceTerm::*;
        let mut b = binders.into_iter();
        let mut c = children.into_iter().map(Arc::new);
        let mut next = || c.next().expect("child count matches constructor");
        match self {
            Var(_) | Star | Bool | True | False => self.clone(),
            Let(..) => Let(b.next().unwrap(), next(), next(), next()),
            Pi(..) => Pi(b.next().unwrap(), next(), next()),
            Lam(..) => Lam(b.next().unwrap(), next(), next()),
            Sigma(..) => Sigma(b.next().unwrap(), next(), next()),
            App(..) => App(next(), next()),
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
