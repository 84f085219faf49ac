//! Named term representations for both calculi and the binding operations
//! they share: free variables, capture-avoiding substitution and
//! α-equivalence.
//!
//! Terms are plain named syntax trees. Each language implements [`Syntax`],
//! a one-layer view exposing a node's binders and its children together with
//! how many of those binders scope over each child. Everything that depends
//! only on binding structure is written once against that view.

mod source;
mod target;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

pub use source::SourceTerm;
pub use target::TargetTerm;

/// A variable or binder name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl From<&Name> for Name {
    fn from(n: &Name) -> Self {
        n.clone()
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// The two sorts. `Box` is never written by users; it only classifies `*`
/// and other kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Universe {
    Star,
    Box,
}

/// The result of type inference: either an ordinary type (a term) or the
/// top sort `Box`, which has no term representation.
#[derive(Clone, Debug, PartialEq)]
pub enum Ty<T> {
    Box,
    Term(T),
}

impl<T> Ty<T> {
    pub fn as_term(&self) -> Option<&T> {
        match self {
            Ty::Box => None,
            Ty::Term(t) => Some(t),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Ty<U> {
        match self {
            Ty::Box => Ty::Box,
            Ty::Term(t) => Ty::Term(f(t)),
        }
    }

    pub fn try_map<U, E>(self, f: impl FnOnce(T) -> Result<U, E>) -> Result<Ty<U>, E> {
        Ok(match self {
            Ty::Box => Ty::Box,
            Ty::Term(t) => Ty::Term(f(t)?),
        })
    }
}

/// One-layer view of a term's binding structure.
///
/// `children` lists every immediate subterm in left-to-right order, paired
/// with the number of leading entries of `binders` that are in scope there.
/// `rebuild` reassembles a node of the same constructor from new binders and
/// children given in the same order.
pub trait Syntax: Clone + fmt::Debug + fmt::Display + Send + Sync + Sized + 'static {
    fn var(name: Name) -> Self;

    fn as_var(&self) -> Option<&Name>;

    fn binders(&self) -> Vec<&Name>;

    fn children(&self) -> Vec<(usize, &Self)>;

    fn rebuild(&self, binders: Vec<Name>, children: Vec<Self>) -> Self;

    fn same_head(&self, other: &Self) -> bool;

    /// Number of syntax nodes.
    fn size(&self) -> usize {
        1 + self.children().iter().map(|(_, c)| c.size()).sum::<usize>()
    }
}

/// Picks a name derived from `base` for which `taken` is false.
///
/// Trailing digits of `base` are replaced by an increasing counter, so `x`
/// yields `x1`, `x2`, ... and `x3` yields `x1`, ... as well.
pub fn fresh_name(base: &Name, taken: impl Fn(&Name) -> bool) -> Name {
    if !taken(base) {
        return base.clone();
    }
    let stem = base.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1u64..)
        .map(|i| Name::from(format!("{stem}{i}")))
        .find(|candidate| !taken(candidate))
        .expect("name supply is unbounded")
}

/// Free variables in order of first occurrence, without duplicates.
pub fn free_vars<T: Syntax>(e: &T) -> Vec<Name> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    collect_free(e, &mut Vec::new(), &mut seen, &mut out);
    out
}

/// Free variables of several terms, in order of first occurrence.
pub fn free_vars_all<'a, T: Syntax>(terms: impl IntoIterator<Item = &'a T>) -> Vec<Name> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for t in terms {
        collect_free(t, &mut Vec::new(), &mut seen, &mut out);
    }
    out
}

pub fn free_var_set<T: Syntax>(e: &T) -> HashSet<Name> {
    free_vars(e).into_iter().collect()
}

fn collect_free<'a, T: Syntax>(
    e: &'a T,
    bound: &mut Vec<&'a Name>,
    seen: &mut HashSet<Name>,
    out: &mut Vec<Name>,
) {
    if let Some(x) = e.as_var() {
        if !bound.contains(&x) && seen.insert(x.clone()) {
            out.push(x.clone());
        }
        return;
    }
    let binders = e.binders();
    for (depth, child) in e.children() {
        let mark = bound.len();
        bound.extend(binders[..depth].iter().copied());
        collect_free(child, bound, seen, out);
        bound.truncate(mark);
    }
}

pub fn occurs_free<T: Syntax>(name: &Name, e: &T) -> bool {
    if let Some(x) = e.as_var() {
        return x == name;
    }
    let binders = e.binders();
    e.children()
        .into_iter()
        .any(|(depth, child)| !binders[..depth].contains(&name) && occurs_free(name, child))
}

/// `body[replacement/var]`, capture-avoiding.
pub fn subst<T: Syntax>(body: &T, replacement: &T, var: &Name) -> T {
    let mut map = HashMap::with_capacity(1);
    map.insert(var.clone(), replacement.clone());
    subst_many(body, &map)
}

/// Renames free occurrences of `from` to `to`.
pub fn rename<T: Syntax>(body: &T, from: &Name, to: &Name) -> T {
    if from == to {
        return body.clone();
    }
    subst(body, &T::var(to.clone()), from)
}

/// Simultaneous capture-avoiding substitution.
pub fn subst_many<T: Syntax>(body: &T, map: &HashMap<Name, T>) -> T {
    if map.is_empty() {
        return body.clone();
    }
    let mut range_fv = HashSet::new();
    for v in map.values() {
        range_fv.extend(free_vars(v));
    }
    subst_go(body, map, &range_fv)
}

fn subst_go<T: Syntax>(e: &T, map: &HashMap<Name, T>, range_fv: &HashSet<Name>) -> T {
    if map.is_empty() {
        return e.clone();
    }
    if let Some(x) = e.as_var() {
        return map.get(x).cloned().unwrap_or_else(|| e.clone());
    }
    let binders: Vec<Name> = e.binders().into_iter().cloned().collect();
    let children = e.children();
    if binders.is_empty() {
        let new_children = children.into_iter().map(|(_, c)| subst_go(c, map, range_fv)).collect();
        return e.rebuild(Vec::new(), new_children);
    }

    // maps[i] / fvs[i] are in force for children under the first i binders.
    let mut maps: Vec<HashMap<Name, T>> = vec![map.clone()];
    let mut fvs: Vec<HashSet<Name>> = vec![range_fv.clone()];
    let mut new_binders = Vec::with_capacity(binders.len());
    for (i, b) in binders.iter().enumerate() {
        let mut m = maps[i].clone();
        let mut fv = fvs[i].clone();
        m.remove(b);
        let scoped: Vec<&T> = children.iter().filter(|(d, _)| *d > i).map(|(_, c)| *c).collect();
        let captures = fv.contains(b)
            && m.keys().any(|k| scoped.iter().any(|c| occurs_free(k, *c)));
        let chosen = if captures {
            let scoped_fv: HashSet<Name> = free_vars_all(scoped.iter().copied()).into_iter().collect();
            let fresh = fresh_name(b, |n| {
                fv.contains(n) || m.contains_key(n) || binders.contains(n) || scoped_fv.contains(n)
            });
            m.insert(b.clone(), T::var(fresh.clone()));
            fv.insert(fresh.clone());
            fresh
        } else {
            b.clone()
        };
        new_binders.push(chosen);
        maps.push(m);
        fvs.push(fv);
    }
    let new_children = children
        .into_iter()
        .map(|(depth, c)| subst_go(c, &maps[depth], &fvs[depth]))
        .collect();
    e.rebuild(new_binders, new_children)
}

/// Equality up to consistent renaming of bound names.
pub fn alpha_eq<T: Syntax>(a: &T, b: &T) -> bool {
    alpha_go(a, b, &mut Vec::new())
}

fn alpha_go<'a, T: Syntax>(a: &'a T, b: &'a T, scope: &mut Vec<(&'a Name, &'a Name)>) -> bool {
    match (a.as_var(), b.as_var()) {
        (Some(x), Some(y)) => {
            for (l, r) in scope.iter().rev() {
                if *l == x || *r == y {
                    return *l == x && *r == y;
                }
            }
            x == y
        }
        (None, None) => {
            if !a.same_head(b) {
                return false;
            }
            let (ba, bb) = (a.binders(), b.binders());
            let (ca, cb) = (a.children(), b.children());
            if ba.len() != bb.len() || ca.len() != cb.len() {
                return false;
            }
            ca.iter().zip(cb.iter()).all(|((da, x), (_, y))| {
                let mark = scope.len();
                scope.extend(ba[..*da].iter().copied().zip(bb[..*da].iter().copied()));
                let ok = alpha_go(*x, *y, scope);
                scope.truncate(mark);
                ok
            })
        }
        _ => false,
    }
}

/// Every name occurring in `e`, bound or free.
pub fn all_names<T: Syntax>(e: &T) -> HashSet<Name> {
    fn go<T: Syntax>(e: &T, out: &mut HashSet<Name>) {
        if let Some(x) = e.as_var() {
            out.insert(x.clone());
            return;
        }
        out.extend(e.binders().into_iter().cloned());
        for (_, c) in e.children() {
            go(c, out);
        }
    }
    let mut out = HashSet::new();
    go(e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::SourceTerm as S;

    #[test]
    fn subst_hits_variable() {
        let e = S::var("e");
        assert!(alpha_eq(&subst(&S::var("x"), &e, &"x".into()), &e));
    }

    #[test]
    fn subst_avoids_capture() {
        // (λy:A.x)[y/x] must not capture the incoming y
        let body = S::lam("y", S::var("A"), S::var("x"));
        let out = subst(&body, &S::var("y"), &"x".into());
        match &out {
            S::Lam(b, _, inner) => {
                assert_ne!(b.as_str(), "y");
                assert_eq!(**inner, S::var("y"));
            }
            other => panic!("expected a lambda, got {other:?}"),
        }
        assert!(alpha_eq(&out, &S::lam("z", S::var("A"), S::var("y"))));
    }

    #[test]
    fn subst_goes_under_pi() {
        let pi = S::pi("x1", S::var("A"), S::app(S::var("x"), S::var("x1")));
        let out = subst(&pi, &S::True, &"x".into());
        let expected = S::pi("x1", S::var("A"), S::app(S::True, S::var("x1")));
        assert!(alpha_eq(&out, &expected));
    }

    #[test]
    fn subst_renames_nested_binders_consistently() {
        // (λy.λy1. x y y1)[y/x]
        let body = S::lam(
            "y",
            S::Bool,
            S::lam("y1", S::Bool, S::app(S::app(S::var("x"), S::var("y")), S::var("y1"))),
        );
        let out = subst(&body, &S::var("y"), &"x".into());
        let expected = S::lam(
            "a",
            S::Bool,
            S::lam("b", S::Bool, S::app(S::app(S::var("y"), S::var("a")), S::var("b"))),
        );
        assert!(alpha_eq(&out, &expected), "{out:?}");
    }

    #[test]
    fn shadowed_variable_untouched() {
        let body = S::lam("x", S::Bool, S::var("x"));
        assert_eq!(subst(&body, &S::True, &"x".into()), body);
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(free_vars(&S::lam("x", S::var("A"), S::var("x"))), vec![Name::from("A")]);
        assert!(free_vars(&S::lam("x", S::Bool, S::var("x"))).is_empty());
        let e = S::app(S::var("f"), S::fst(S::var("p")));
        assert_eq!(free_vars(&e), vec![Name::from("f"), Name::from("p")]);
    }

    #[test]
    fn alpha_examples() {
        let a = S::lam("x", S::var("A"), S::var("x"));
        assert!(alpha_eq(&a, &S::lam("y", S::var("A"), S::var("y"))));
        assert!(!alpha_eq(&a, &S::lam("x", S::var("A"), S::var("A"))));
        assert!(alpha_eq(&S::pi("x", S::Star, S::var("x")), &S::pi("z", S::Star, S::var("z"))));
        // a bound name is not equal to a free one with the same spelling
        assert!(!alpha_eq(
            &S::lam("x", S::Bool, S::var("y")),
            &S::lam("y", S::Bool, S::var("y"))
        ));
    }

    #[test]
    fn fresh_name_skips_taken() {
        let taken: HashSet<Name> = ["x", "x1"].into_iter().map(Name::from).collect();
        assert_eq!(fresh_name(&"x".into(), |n| taken.contains(n)).as_str(), "x2");
        assert_eq!(fresh_name(&"y".into(), |n| taken.contains(n)).as_str(), "y");
        assert_eq!(fresh_name(&"x1".into(), |n| taken.contains(n)).as_str(), "x2");
    }
}
