use std::fmt;

use crate::syntax::{Name, SourceTerm, TargetTerm, Ty};

use super::sexpr::Sexp;

/// Default line width used for files written by the tools.
pub const WIDTH: usize = 80;

fn atom(s: &str) -> Sexp {
    Sexp::atom(s)
}

fn name(n: &Name) -> Sexp {
    Sexp::atom(n.as_str())
}

fn list(items: Vec<Sexp>) -> Sexp {
    Sexp::list(items)
}

fn binder(n: &Name, ty: Sexp) -> Sexp {
    list(vec![name(n), ty])
}

pub(crate) fn source_sexp(e: &SourceTerm) -> Sexp {
    use SourceTerm::*;
    let s = source_sexp;
    match e {
        Var(x) => name(x),
        Star => atom("*"),
        Bool => atom("Bool"),
        True => atom("true"),
        False => atom("false"),
        Let(x, bound, annot, body) => {
            list(vec![atom("let"), list(vec![name(x), s(bound), s(annot)]), s(body)])
        }
        Pi(x, a, b) => list(vec![atom("Pi"), binder(x, s(a)), s(b)]),
        Lam(x, a, b) => list(vec![atom("lam"), binder(x, s(a)), s(b)]),
        Sigma(x, a, b) => list(vec![atom("Sigma"), binder(x, s(a)), s(b)]),
        App(f, a) => list(vec![atom("app"), s(f), s(a)]),
        Pair(a, b, t) => list(vec![atom("pair"), s(a), s(b), s(t)]),
        Fst(p) => list(vec![atom("fst"), s(p)]),
        Snd(p) => list(vec![atom("snd"), s(p)]),
        If(c, t, f) => list(vec![atom("if"), s(c), s(t), s(f)]),
    }
}

pub(crate) fn target_sexp(e: &TargetTerm) -> Sexp {
    use TargetTerm::*;
    let s = target_sexp;
    let code = |head: &str, n: &Name, ea: &TargetTerm, x: &Name, xa: &TargetTerm, body: &TargetTerm| {
        list(vec![atom(head), list(vec![binder(n, s(ea)), binder(x, s(xa))]), s(body)])
    };
    match e {
        Var(x) => name(x),
        Star => atom("*"),
        Bool => atom("Bool"),
        True => atom("true"),
        False => atom("false"),
        UnitTy => atom("Unit"),
        UnitVal => atom("unit"),
        Let(x, bound, annot, body) => {
            list(vec![atom("let"), list(vec![name(x), s(bound), s(annot)]), s(body)])
        }
        Pi(x, a, b) => list(vec![atom("Pi"), binder(x, s(a)), s(b)]),
        Sigma(x, a, b) => list(vec![atom("Sigma"), binder(x, s(a)), s(b)]),
        App(f, a) => list(vec![atom("app"), s(f), s(a)]),
        Pair(a, b, t) => list(vec![atom("pair"), s(a), s(b), s(t)]),
        Fst(p) => list(vec![atom("fst"), s(p)]),
        Snd(p) => list(vec![atom("snd"), s(p)]),
        If(c, t, f) => list(vec![atom("if"), s(c), s(t), s(f)]),
        CodeTy(n, ea, x, xa, r) => code("Code", n, ea, x, xa, r),
        CodeVal(n, ea, x, xa, body) => code("code", n, ea, x, xa, body),
        Clo(c, v) => list(vec![atom("clo"), s(c), s(v)]),
    }
}

impl fmt::Display for SourceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", source_sexp(self))
    }
}

impl fmt::Display for TargetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", target_sexp(self))
    }
}

/// `□` has no surface form; it is shown as `[]` in diagnostics.
impl<T: fmt::Display> fmt::Display for Ty<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Box => f.write_str("[]"),
            Ty::Term(t) => t.fmt(f),
        }
    }
}
