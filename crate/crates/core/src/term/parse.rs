use crate::error::{Error, Result};
use crate::signature::{SignedObject, Word};

use super::Term;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Semi,
    Bar,
    Caret,
    Star,
    Comma,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let single = match c {
            ';' => Some(Tok::Semi),
            '|' => Some(Tok::Bar),
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
        } else if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    ident.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(ident),
                line: l,
                column: col,
            });
        } else {
            return Err(Error::Syntax {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn seq(&mut self) -> Result<Term> {
        let mut t = self.par()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            let rhs = self.par()?;
            t = Term::Comp(Box::new(t), Box::new(rhs));
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term> {
        let mut t = self.postfix()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.postfix()?;
            t = Term::Tensor(Box::new(t), Box::new(rhs));
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Caret {
            let here = self.error_here("a term containing cup has no dual");
            self.bump();
            t = t.dual().ok_or(here)?;
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.seq()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) if *self.peek2() == Tok::LParen && is_keyword(&name) => {
                self.bump();
                self.bump();
                let t = match name.as_str() {
                    "id" => Term::Id(self.word()?),
                    "cup" => Term::Cup(self.word()?),
                    _ => {
                        let v = self.word()?;
                        self.expect(Tok::Semi, "`;` between the two words of sym")?;
                        let w = self.word()?;
                        Term::Sym(v, w)
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) => {
                if is_keyword(&name) {
                    return Err(self.error_here(format!("`{name}` must be followed by `(`")));
                }
                self.bump();
                Ok(Term::Gen(name))
            }
            other => Err(self.error_here(format!("expected a term, found {}", describe(&other)))),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        if matches!(self.peek(), Tok::RParen | Tok::Semi) {
            return Ok(Word::unit());
        }
        loop {
            match self.peek().clone() {
                Tok::Ident(s) => {
                    self.bump();
                    let starred = if *self.peek() == Tok::Star {
                        self.bump();
                        true
                    } else {
                        false
                    };
                    letters.push(SignedObject { symbol: s, starred });
                }
                other => return Err(self.error_here(format!("expected an object letter, found {}", describe(&other)))),
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Word::new(letters))
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "id" | "sym" | "cup")
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Semi => "`;`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Star => "`*`".into(),
        Tok::Comma => "`,`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a term. Errors carry a 1-based line and column.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.seq()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error_here(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(t)
}
