//! Reading and printing S-expressions.

use super::SExpr;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '\'' | ';')
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.to_string(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == ';' {
                while let Some(c) = self.peek() {
                    self.pos += c.len_utf8();
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn atom(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_delimiter(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn expr(&mut self) -> Result<SExpr, ParseError> {
        self.skip_space();
        match self.peek() {
            None => self.error("unexpected end of input"),
            Some(')') => self.error("unexpected `)`"),
            Some('\'') => {
                self.pos += 1;
                let quoted = self.expr()?;
                Ok(SExpr::list([SExpr::sym("quote"), quoted]))
            }
            Some('(') => {
                self.pos += 1;
                self.list_tail()
            }
            Some(_) => {
                let start = self.pos;
                let atom = self.atom();
                if atom == "." {
                    self.pos = start;
                    return self.error("unexpected `.`");
                }
                Ok(SExpr::sym(atom))
            }
        }
    }

    /// Parses the rest of a list after its opening parenthesis.
    fn list_tail(&mut self) -> Result<SExpr, ParseError> {
        let mut items = Vec::new();
        let mut tail = SExpr::Nil;
        loop {
            self.skip_space();
            match self.peek() {
                None => return self.error("missing `)`"),
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                Some('.') if self.text[self.pos + 1..].starts_with(is_delimiter) || self.pos + 1 == self.text.len() => {
                    if items.is_empty() {
                        return self.error("`.` must follow at least one element");
                    }
                    self.pos += 1;
                    tail = self.expr()?;
                    self.skip_space();
                    if self.peek() != Some(')') {
                        return self.error("expected `)` after dotted tail");
                    }
                    self.pos += 1;
                    break;
                }
                Some(_) => items.push(self.expr()?),
            }
        }
        Ok(items.into_iter().rev().fold(tail, |tail, head| SExpr::cons(head, tail)))
    }
}

/// Reads one S-expression; `'d` abbreviates `(quote d)` and `;` starts a
/// comment running to the end of the line.
pub fn parse_sexpr(text: &str) -> Result<SExpr, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let expr = parser.expr()?;
    parser.skip_space();
    if parser.pos < text.len() {
        return parser.error("trailing input after expression");
    }
    Ok(expr)
}

/// Canonical form: single spaces, list shorthand, dotted pairs only where
/// the spine does not end in `()`, and no quote abbreviation.
pub fn print_sexpr(expr: &SExpr) -> String {
    let mut out = String::new();
    write_sexpr(expr, &mut out);
    out
}

fn write_sexpr(expr: &SExpr, out: &mut String) {
    match expr {
        SExpr::Sym(s) => out.push_str(s.as_str()),
        SExpr::Nil => out.push_str("()"),
        SExpr::Cons(car, cdr) => {
            out.push('(');
            write_sexpr(car, out);
            let mut rest = &**cdr;
            loop {
                match rest {
                    SExpr::Nil => break,
                    SExpr::Cons(car, cdr) => {
                        out.push(' ');
                        write_sexpr(car, out);
                        rest = cdr;
                    }
                    SExpr::Sym(s) => {
                        out.push_str(" . ");
                        out.push_str(s.as_str());
                        break;
                    }
                }
            }
            out.push(')');
        }
    }
}
