//! Concrete s-expression syntax for both calculi.

mod parse;
mod print;
mod sexpr;

pub use parse::{parse_bindings, parse_file, parse_term, pretty, Decl, Language, SourceFile, SurfaceTerm};
pub use print::WIDTH;
pub use sexpr::{read_all, read_one, ParseError, Sexp, SexpKind};
