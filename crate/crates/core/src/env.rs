use std::fmt;

use crate::syntax::{fresh_name, free_vars_all, rename, Name, Syntax};

/// An environment entry: an assumption `x : A` or a definition `x = e : A`.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry<T> {
    Assumption { name: Name, ty: T },
    Definition { name: Name, term: T, ty: T },
}

impl<T> Entry<T> {
    pub fn name(&self) -> &Name {
        match self {
            Entry::Assumption { name, .. } | Entry::Definition { name, .. } => name,
        }
    }

    pub fn ty(&self) -> &T {
        match self {
            Entry::Assumption { ty, .. } | Entry::Definition { ty, .. } => ty,
        }
    }

    pub fn definition(&self) -> Option<&T> {
        match self {
            Entry::Definition { term, .. } => Some(term),
            Entry::Assumption { .. } => None,
        }
    }
}

/// Ordered typing environment. Each entry may only mention earlier names,
/// and names are pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct TypingEnv<T> {
    entries: Vec<Entry<T>>,
}

impl<T> Default for TypingEnv<T> {
    fn default() -> Self {
        TypingEnv { entries: Vec::new() }
    }
}

impl<T: Syntax> TypingEnv<T> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<Entry<T>>) -> Self {
        TypingEnv { entries }
    }

    pub fn entries(&self) -> &[Entry<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, name: &Name) -> Option<&Entry<T>> {
        self.entries.iter().rev().find(|e| e.name() == name)
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.lookup(name).is_some()
    }

    pub fn definition_of(&self, name: &Name) -> Option<&T> {
        self.lookup(name).and_then(Entry::definition)
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().map(Entry::name)
    }

    pub fn position(&self, name: &Name) -> Option<usize> {
        self.entries.iter().position(|e| e.name() == name)
    }

    pub fn push(&mut self, entry: Entry<T>) {
        debug_assert!(!self.contains(entry.name()), "duplicate environment name {}", entry.name());
        self.entries.push(entry);
    }

    pub fn push_assumption(&mut self, name: Name, ty: T) {
        self.push(Entry::Assumption { name, ty });
    }

    pub fn push_definition(&mut self, name: Name, term: T, ty: T) {
        self.push(Entry::Definition { name, term, ty });
    }

    pub fn with_assumption(&self, name: Name, ty: T) -> Self {
        let mut env = self.clone();
        env.push_assumption(name, ty);
        env
    }

    pub fn with_definition(&self, name: Name, term: T, ty: T) -> Self {
        let mut env = self.clone();
        env.push_definition(name, term, ty);
        env
    }

    /// The prefix of the environment preceding `name`.
    pub fn prefix_before(&self, name: &Name) -> Self {
        let cut = self.position(name).unwrap_or(self.entries.len());
        TypingEnv { entries: self.entries[..cut].to_vec() }
    }

    /// A name based on `base` that is neither bound here nor free in `avoid`.
    pub fn fresh(&self, base: &Name, avoid: &[&T]) -> Name {
        let fv = free_vars_all(avoid.iter().copied());
        fresh_name(base, |n| self.contains(n) || fv.contains(n))
    }

    /// Prepares to go under binder `binder` whose scope is `scoped`: when the
    /// name is already bound here, a fresh one is chosen and the scoped
    /// terms are renamed accordingly.
    pub fn open(&self, binder: &Name, scoped: &[&T]) -> (Name, Vec<T>) {
        if !self.contains(binder) {
            return (binder.clone(), scoped.iter().map(|t| (*t).clone()).collect());
        }
        let fresh = self.fresh(binder, scoped);
        let renamed = scoped.iter().map(|t| rename(*t, binder, &fresh)).collect();
        (fresh, renamed)
    }

    pub fn map<U: Syntax>(&self, mut f: impl FnMut(&T) -> U) -> TypingEnv<U> {
        TypingEnv {
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    Entry::Assumption { name, ty } => Entry::Assumption { name: name.clone(), ty: f(ty) },
                    Entry::Definition { name, term, ty } => {
                        Entry::Definition { name: name.clone(), term: f(term), ty: f(ty) }
                    }
                })
                .collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for TypingEnv<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("·");
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match e {
                Entry::Assumption { name, ty } => write!(f, "{name} : {ty}")?,
                Entry::Definition { name, term, ty } => write!(f, "{name} = {term} : {ty}")?,
            }
        }
        Ok(())
    }
}

/// A dependency-ordered sequence of typed bindings; each type mentions only
/// earlier names.
#[derive(Clone, Debug, PartialEq)]
pub struct Telescope<T> {
    bindings: Vec<(Name, T)>,
}

impl<T> Default for Telescope<T> {
    fn default() -> Self {
        Telescope { bindings: Vec::new() }
    }
}

impl<T: Syntax> Telescope<T> {
    pub fn new(bindings: Vec<(Name, T)>) -> Self {
        Telescope { bindings }
    }

    pub fn bindings(&self) -> &[(Name, T)] {
        &self.bindings
    }

    pub fn names(&self) -> Vec<Name> {
        self.bindings.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn map<U: Syntax>(&self, mut f: impl FnMut(&T) -> U) -> Telescope<U> {
        Telescope { bindings: self.bindings.iter().map(|(n, t)| (n.clone(), f(t))).collect() }
    }

    pub fn try_map<U: Syntax, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Telescope<U>, E> {
        let bindings = self
            .bindings
            .iter()
            .map(|(n, t)| Ok((n.clone(), f(t)?)))
            .collect::<Result<_, E>>()?;
        Ok(Telescope { bindings })
    }

    /// Whether every type mentions only names bound earlier in the telescope.
    pub fn is_closed(&self) -> bool {
        self.bindings.iter().enumerate().all(|(i, (_, ty))| {
            crate::syntax::free_vars(ty)
                .iter()
                .all(|x| self.bindings[..i].iter().any(|(n, _)| n == x))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::SourceTerm as S;

    #[test]
    fn open_renames_on_clash() {
        let env = TypingEnv::empty().with_assumption("x".into(), S::Bool);
        let body = S::app(S::var("x"), S::var("y"));
        let (x, renamed) = env.open(&"x".into(), &[&body]);
        assert_ne!(x.as_str(), "x");
        assert_ne!(x.as_str(), "y");
        assert_eq!(renamed[0], S::app(S::var(x), S::var("y")));
    }

    #[test]
    fn lookup_finds_definitions() {
        let env = TypingEnv::empty().with_definition("b".into(), S::True, S::Bool);
        assert_eq!(env.definition_of(&"b".into()), Some(&S::True));
        assert!(env.definition_of(&"c".into()).is_none());
    }

    #[test]
    fn telescope_closedness() {
        let tel = Telescope::new(vec![("A".into(), S::Star), ("a".into(), S::var("A"))]);
        assert!(tel.is_closed());
        let bad = Telescope::new(vec![("a".into(), S::var("A"))]);
        assert!(!bad.is_closed());
    }
}
