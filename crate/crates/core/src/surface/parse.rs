use std::collections::HashSet;
use std::fmt;

use crate::env::TypingEnv;
use crate::syntax::{Name, SourceTerm, Syntax, TargetTerm};

use super::print::{source_sexp, target_sexp, WIDTH};
use super::sexpr::{read_all, read_one, ParseError, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Language {
    Cc,
    Cccc,
}

impl Language {
    /// Guesses the language from a file name: `.cccc` is the target
    /// language, anything else the source.
    pub fn from_path(path: &str) -> Language {
        if path.ends_with(".cccc") {
            Language::Cccc
        } else {
            Language::Cc
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Cc => "cc",
            Language::Cccc => "cccc",
        })
    }
}

const KEYWORDS: &[&str] = &[
    "lam", "Pi", "app", "Sigma", "pair", "fst", "snd", "let", "if", "code", "Code", "clo", "*", "Bool",
    "true", "false", "unit", "Unit", "def", "assume", "main", "bind", "[]",
];

/// Terms with a concrete s-expression syntax.
pub trait SurfaceTerm: Syntax {
    const LANGUAGE: Language;

    fn to_sexp(&self) -> Sexp;

    fn from_sexp(s: &Sexp) -> Result<Self, ParseError>;
}

fn ident(s: &Sexp) -> Result<Name, ParseError> {
    match s.as_atom() {
        Some(a) if !KEYWORDS.contains(&a) => Ok(Name::from(a)),
        Some(a) => Err(s.error(format!("an identifier, found reserved word `{a}`"))),
        None => Err(s.error("an identifier")),
    }
}

/// `(x A)`
fn binder<T: SurfaceTerm>(s: &Sexp) -> Result<(Name, T), ParseError> {
    match s.as_list() {
        Some([x, ty]) => Ok((ident(x)?, T::from_sexp(ty)?)),
        _ => Err(s.error("a binder `(name type)`")),
    }
}

fn arity<'a>(s: &Sexp, items: &'a [Sexp], n: usize, shape: &str) -> Result<&'a [Sexp], ParseError> {
    if items.len() == n + 1 {
        Ok(&items[1..])
    } else {
        Err(s.error(shape.to_string()))
    }
}

/// Forms shared by both languages. Returns `None` for a head that is not
/// one of them.
fn common<T: SurfaceTerm>(
    s: &Sexp,
    items: &[Sexp],
    build: &Builders<T>,
) -> Result<Option<T>, ParseError> {
    let head = items[0].as_atom().unwrap_or("");
    let parse = T::from_sexp;
    let term = match head {
        "Pi" | "Sigma" => {
            let args = arity(s, items, 2, &format!("`({head} (x A) B)`"))?;
            let (x, a) = binder::<T>(&args[0])?;
            let b = parse(&args[1])?;
            if head == "Pi" {
                (build.pi)(x, a, b)
            } else {
                (build.sigma)(x, a, b)
            }
        }
        "app" => {
            if items.len() < 3 {
                return Err(s.error("`(app f e ...)` with at least one argument"));
            }
            let mut f = parse(&items[1])?;
            for arg in &items[2..] {
                f = (build.app)(f, parse(arg)?);
            }
            f
        }
        "pair" => {
            let args = arity(s, items, 3, "`(pair e1 e2 T)`")?;
            let is_sigma = args[2].as_list().and_then(|l| l.first()).and_then(Sexp::as_atom) == Some("Sigma");
            if !is_sigma {
                return Err(args[2].error("a `(Sigma (x A) B)` pair annotation"));
            }
            (build.pair)(parse(&args[0])?, parse(&args[1])?, parse(&args[2])?)
        }
        "fst" | "snd" => {
            let args = arity(s, items, 1, &format!("`({head} e)`"))?;
            let e = parse(&args[0])?;
            if head == "fst" {
                (build.fst)(e)
            } else {
                (build.snd)(e)
            }
        }
        "let" => {
            let args = arity(s, items, 2, "`(let (x e A) body)`")?;
            let (x, e, a) = match args[0].as_list() {
                Some([x, e, a]) => (ident(x)?, parse(e)?, parse(a)?),
                _ => return Err(args[0].error("a definition `(x e A)`")),
            };
            (build.let_)(x, e, a, parse(&args[1])?)
        }
        "if" => {
            let args = arity(s, items, 3, "`(if c t f)`")?;
            (build.if_)(parse(&args[0])?, parse(&args[1])?, parse(&args[2])?)
        }
        _ => return Ok(None),
    };
    Ok(Some(term))
}

struct Builders<T> {
    pi: fn(Name, T, T) -> T,
    sigma: fn(Name, T, T) -> T,
    app: fn(T, T) -> T,
    pair: fn(T, T, T) -> T,
    fst: fn(T) -> T,
    snd: fn(T) -> T,
    let_: fn(Name, T, T, T) -> T,
    if_: fn(T, T, T) -> T,
}

const SOURCE: Builders<SourceTerm> = Builders {
    pi: |x, a, b| SourceTerm::pi(x, a, b),
    sigma: |x, a, b| SourceTerm::sigma(x, a, b),
    app: SourceTerm::app,
    pair: SourceTerm::pair,
    fst: SourceTerm::fst,
    snd: SourceTerm::snd,
    let_: |x, e, a, b| SourceTerm::let_(x, e, a, b),
    if_: SourceTerm::if_,
};

const TARGET: Builders<TargetTerm> = Builders {
    pi: |x, a, b| TargetTerm::pi(x, a, b),
    sigma: |x, a, b| TargetTerm::sigma(x, a, b),
    app: TargetTerm::app,
    pair: TargetTerm::pair,
    fst: TargetTerm::fst,
    snd: TargetTerm::snd,
    let_: |x, e, a, b| TargetTerm::let_(x, e, a, b),
    if_: TargetTerm::if_,
};

fn atom_term<T: SurfaceTerm>(s: &Sexp, a: &str, constants: &[(&str, T)]) -> Result<T, ParseError> {
    if let Some((_, t)) = constants.iter().find(|(k, _)| *k == a) {
        return Ok(t.clone());
    }
    match a {
        "[]" => Err(s.error("a term; `[]` has no surface syntax")),
        "unit" | "Unit" | "lam" | "code" | "clo" | "Code" => {
            Err(s.error(format!("a {} term, found `{a}`", T::LANGUAGE)))
        }
        _ => Ok(T::var(ident(s)?)),
    }
}

impl SurfaceTerm for SourceTerm {
    const LANGUAGE: Language = Language::Cc;

    fn to_sexp(&self) -> Sexp {
        source_sexp(self)
    }

    fn from_sexp(s: &Sexp) -> Result<Self, ParseError> {
        use SourceTerm as S;
        let items = match s.as_list() {
            None => {
                let constants = [("*", S::Star), ("Bool", S::Bool), ("true", S::True), ("false", S::False)];
                return atom_term(s, s.as_atom().unwrap(), &constants);
            }
            Some([]) => return Err(s.error("a non-empty form")),
            Some(items) => items,
        };
        if let Some(t) = common(s, items, &SOURCE)? {
            return Ok(t);
        }
        match items[0].as_atom() {
            Some("lam") => {
                let args = arity(s, items, 2, "`(lam (x A) e)`")?;
                let (x, a) = binder::<S>(&args[0])?;
                Ok(S::lam(x, a, S::from_sexp(&args[1])?))
            }
            Some(head @ ("code" | "Code" | "clo")) => Err(items[0].error(format!("a cc form, found `{head}`"))),
            _ => Err(items[0].error("a form: lam, Pi, app, Sigma, pair, fst, snd, let or if")),
        }
    }
}

impl SurfaceTerm for TargetTerm {
    const LANGUAGE: Language = Language::Cccc;

    fn to_sexp(&self) -> Sexp {
        target_sexp(self)
    }

    fn from_sexp(s: &Sexp) -> Result<Self, ParseError> {
        use TargetTerm as T;
        let items = match s.as_list() {
            None => {
                let constants = [
                    ("*", T::Star),
                    ("Bool", T::Bool),
                    ("true", T::True),
                    ("false", T::False),
                    ("Unit", T::UnitTy),
                    ("unit", T::UnitVal),
                ];
                return atom_term(s, s.as_atom().unwrap(), &constants);
            }
            Some([]) => return Err(s.error("a non-empty form")),
            Some(items) => items,
        };
        if let Some(t) = common(s, items, &TARGET)? {
            return Ok(t);
        }
        match items[0].as_atom() {
            Some(head @ ("code" | "Code")) => {
                let args = arity(s, items, 2, &format!("`({head} ((n A') (x A)) e)`"))?;
                let (n, ea, x, xa) = match args[0].as_list() {
                    Some([env, arg]) => {
                        let (n, ea) = binder::<T>(env)?;
                        let (x, xa) = binder::<T>(arg)?;
                        (n, ea, x, xa)
                    }
                    _ => return Err(args[0].error("code binders `((n A') (x A))`")),
                };
                let body = T::from_sexp(&args[1])?;
                Ok(if head == "code" { T::code(n, ea, x, xa, body) } else { T::code_ty(n, ea, x, xa, body) })
            }
            Some("clo") => {
                let args = arity(s, items, 2, "`(clo e env)`")?;
                Ok(T::clo(T::from_sexp(&args[0])?, T::from_sexp(&args[1])?))
            }
            Some("lam") => Err(items[0].error("a cccc form, found `lam`; functions are closures")),
            _ => Err(items[0].error("a form: Pi, app, Sigma, pair, fst, snd, let, if, code, Code or clo")),
        }
    }
}

/// Parses a single term.
pub fn parse_term<T: SurfaceTerm>(text: &str) -> Result<T, ParseError> {
    T::from_sexp(&read_one(text)?)
}

/// Renders a term within the default line width.
pub fn pretty<T: SurfaceTerm>(e: &T) -> String {
    e.to_sexp().pretty(WIDTH)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl<T> {
    Def { name: Name, term: T, ty: T },
    Assume { name: Name, ty: T },
    Main(T),
}

/// A program: definitions and assumptions forming an environment, and an
/// optional main term checked in it.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceFile<T> {
    pub decls: Vec<Decl<T>>,
}

impl<T: SurfaceTerm> SourceFile<T> {
    pub fn env(&self) -> TypingEnv<T> {
        let mut env = TypingEnv::empty();
        for d in &self.decls {
            match d {
                Decl::Def { name, term, ty } => env.push_definition(name.clone(), term.clone(), ty.clone()),
                Decl::Assume { name, ty } => env.push_assumption(name.clone(), ty.clone()),
                Decl::Main(_) => {}
            }
        }
        env
    }

    pub fn main(&self) -> Option<&T> {
        self.decls.iter().find_map(|d| match d {
            Decl::Main(e) => Some(e),
            _ => None,
        })
    }

    /// Builds a file from an environment and an optional main term.
    pub fn from_env(env: &TypingEnv<T>, main: Option<T>) -> Self {
        use crate::env::Entry;
        let mut decls: Vec<Decl<T>> = env
            .entries()
            .iter()
            .map(|e| match e {
                Entry::Assumption { name, ty } => Decl::Assume { name: name.clone(), ty: ty.clone() },
                Entry::Definition { name, term, ty } => {
                    Decl::Def { name: name.clone(), term: term.clone(), ty: ty.clone() }
                }
            })
            .collect();
        decls.extend(main.map(Decl::Main));
        SourceFile { decls }
    }
}

impl<T: SurfaceTerm> fmt::Display for SourceFile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            let s = match d {
                Decl::Def { name, term, ty } => {
                    Sexp::list(vec![Sexp::atom("def"), Sexp::atom(name.as_str()), term.to_sexp(), ty.to_sexp()])
                }
                Decl::Assume { name, ty } => {
                    Sexp::list(vec![Sexp::atom("assume"), Sexp::atom(name.as_str()), ty.to_sexp()])
                }
                Decl::Main(e) => Sexp::list(vec![Sexp::atom("main"), e.to_sexp()]),
            };
            writeln!(f, "{}", s.pretty(WIDTH))?;
        }
        Ok(())
    }
}

fn declared_name(seen: &mut HashSet<Name>, s: &Sexp) -> Result<Name, ParseError> {
    let n = ident(s)?;
    if !seen.insert(n.clone()) {
        return Err(s.error(format!("a fresh name, `{n}` is already declared")));
    }
    Ok(n)
}

/// Parses a file of `(def x e A)`, `(assume x A)` and a final optional
/// `(main e)`. A bare term in last position is read as the main term.
pub fn parse_file<T: SurfaceTerm>(text: &str) -> Result<SourceFile<T>, ParseError> {
    let forms = read_all(text)?;
    let mut decls = Vec::new();
    let mut seen = HashSet::new();
    let count = forms.len();
    for (i, form) in forms.iter().enumerate() {
        let head = form.as_list().and_then(|items| items.first()).and_then(Sexp::as_atom);
        let items = form.as_list().unwrap_or(&[]);
        let decl = match head {
            Some("def") => {
                let args = arity(form, items, 3, "`(def name term type)`")?;
                let name = declared_name(&mut seen, &args[0])?;
                Decl::Def { name, term: T::from_sexp(&args[1])?, ty: T::from_sexp(&args[2])? }
            }
            Some("assume") => {
                let args = arity(form, items, 2, "`(assume name type)`")?;
                let name = declared_name(&mut seen, &args[0])?;
                Decl::Assume { name, ty: T::from_sexp(&args[1])? }
            }
            Some("main") => {
                let args = arity(form, items, 1, "`(main term)`")?;
                Decl::Main(T::from_sexp(&args[0])?)
            }
            _ => Decl::Main(T::from_sexp(form)?),
        };
        if matches!(decl, Decl::Main(_)) && i + 1 != count {
            return Err(forms[i + 1].error("end of file after the main term"));
        }
        decls.push(decl);
    }
    Ok(SourceFile { decls })
}

/// Parses a substitution file: a sequence of `(bind name term)`.
pub fn parse_bindings<T: SurfaceTerm>(text: &str) -> Result<Vec<(Name, T)>, ParseError> {
    let mut seen = HashSet::new();
    read_all(text)?
        .iter()
        .map(|form| match form.as_list() {
            Some([head, x, e]) if head.as_atom() == Some("bind") => {
                Ok((declared_name(&mut seen, x)?, T::from_sexp(e)?))
            }
            _ => Err(form.error("`(bind name term)`")),
        })
        .collect()
}
