use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, expected: impl Into<String>) -> Self {
        ParseError { line, column, expected: expected.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SexpKind {
    Atom(String),
    List(Vec<Sexp>),
}

/// An s-expression with the 1-based position of its first character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sexp {
    pub kind: SexpKind,
    pub line: usize,
    pub column: usize,
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Self {
        Sexp { kind: SexpKind::Atom(s.into()), line: 0, column: 0 }
    }

    pub fn list(items: Vec<Sexp>) -> Self {
        Sexp { kind: SexpKind::List(items), line: 0, column: 0 }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(a) => Some(a),
            SexpKind::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            SexpKind::List(items) => Some(items),
            SexpKind::Atom(_) => None,
        }
    }

    pub fn error(&self, expected: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, expected)
    }

    fn flat_len(&self) -> usize {
        match &self.kind {
            SexpKind::Atom(a) => a.chars().count(),
            SexpKind::List(items) => {
                2 + items.iter().map(Sexp::flat_len).sum::<usize>() + items.len().saturating_sub(1)
            }
        }
    }

    /// Renders with line breaks so that lines stay within `width` where
    /// possible. A list that does not fit keeps its head (and, for binding
    /// forms, the binder group) on the first line and indents the rest.
    pub fn pretty(&self, width: usize) -> String {
        let mut out = String::new();
        self.render(0, width, &mut out);
        out
    }

    fn render(&self, column: usize, width: usize, out: &mut String) {
        let items = match &self.kind {
            SexpKind::List(items) if column + self.flat_len() > width && !items.is_empty() => items,
            _ => {
                out.push_str(&self.to_string());
                return;
            }
        };
        out.push('(');
        let mut rest = items.iter();
        let head = rest.next().unwrap();
        head.render(column + 1, width, out);
        let keeps_binder = matches!(
            head.as_atom(),
            Some("lam" | "Pi" | "Sigma" | "let" | "code" | "Code" | "def" | "assume" | "bind")
        );
        if keeps_binder {
            if let Some(binder) = rest.next() {
                out.push(' ');
                binder.render(column + head.flat_len() + 2, width, out);
            }
        }
        for item in rest {
            out.push('\n');
            out.extend(std::iter::repeat_n(' ', column + 2));
            item.render(column + 2, width, out);
        }
        out.push(')');
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SexpKind::Atom(a) => f.write_str(a),
            SexpKind::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Reads every top-level s-expression in `text`. `;` starts a comment that
/// runs to the end of the line.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut reader = Reader { chars: text.chars().collect(), pos: 0, line: 1, column: 1 };
    let mut out = Vec::new();
    loop {
        reader.skip_trivia();
        if reader.at_end() {
            return Ok(out);
        }
        out.push(reader.read()?);
    }
}

/// Reads exactly one s-expression.
pub fn read_one(text: &str) -> Result<Sexp, ParseError> {
    let mut reader = Reader { chars: text.chars().collect(), pos: 0, line: 1, column: 1 };
    reader.skip_trivia();
    if reader.at_end() {
        return Err(ParseError::new(reader.line, reader.column, "a term"));
    }
    let s = reader.read()?;
    reader.skip_trivia();
    if !reader.at_end() {
        return Err(ParseError::new(reader.line, reader.column, "end of input"));
    }
    Ok(s)
}

struct Reader {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Reader {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        let (line, column) = (self.line, self.column);
        match self.peek() {
            None => Err(ParseError::new(line, column, "a term")),
            Some(')') => Err(ParseError::new(line, column, "a term, found `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => {
                            let expected = format!("`)` to close the list opened at {line}:{column}");
                            return Err(ParseError::new(self.line, self.column, expected));
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp { kind: SexpKind::List(items), line, column });
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut atom = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    self.bump();
                }
                Ok(Sexp { kind: SexpKind::Atom(atom), line, column })
            }
        }
    }
}
