//! Minimal s-expression reader shared by every text format of the toolchain.

use std::fmt;

/// Byte offset plus 1-based line/column of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// True for a list whose first element is the atom `head`.
    pub fn is_form(&self, head: &str) -> bool {
        matches!(self.as_list(), Some([Sexp::Atom(h, _), ..]) if h == head)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => f.write_str(s),
            Sexp::List(items, _) => {
                f.write_str("(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{it}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct ReadError {
    pub pos: Pos,
    pub msg: String,
}

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && c != '(' && c != ')' && c != ';'
}

/// Reads every top-level form of `text`. `;` starts a line comment.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ReadError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let pos = Pos { line, col };
        let advance = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        advance(c, &mut line, &mut col);
        match c {
            ';' => {
                while let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' => stack.push((Vec::new(), pos)),
            ')' => {
                let (items, start) = stack.pop().ok_or_else(|| ReadError {
                    pos,
                    msg: "unbalanced ')'".into(),
                })?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            c if c.is_whitespace() => {}
            c => {
                let mut s = String::from(c);
                while let Some(&n) = chars.peek() {
                    if !is_atom_char(n) {
                        break;
                    }
                    s.push(n);
                    chars.next();
                    col += 1;
                }
                let atom = Sexp::Atom(s, pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => top.push(atom),
                }
            }
        }
    }
    if let Some((_, start)) = stack.pop() {
        return Err(ReadError {
            pos: start,
            msg: "unclosed '('".into(),
        });
    }
    Ok(top)
}

/// Reads exactly one form.
pub fn read_one(text: &str) -> Result<Sexp, ReadError> {
    let mut forms = read_all(text)?;
    match forms.len() {
        1 => Ok(forms.pop().unwrap()),
        0 => Err(ReadError {
            pos: Pos { line: 1, col: 1 },
            msg: "empty input".into(),
        }),
        _ => Err(ReadError {
            pos: forms[1].pos(),
            msg: "trailing input after first form".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists_and_comments() {
        let forms = read_all("(a (b c)) ; note\n d").unwrap();
        assert_eq!(forms.len(), 2);
        assert_eq!(forms[0].to_string(), "(a (b c))");
        assert_eq!(forms[1].pos(), Pos { line: 2, col: 2 });
    }

    #[test]
    fn unbalanced_reports_position() {
        let err = read_all("(a\n(b)").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 1 });
        let err = read_all("a)").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 2 });
    }
}
