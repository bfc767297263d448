//! Term syntax for diagrams of the free teleological category.
//!
//! Grammar (ASCII):
//!
//! ```text
//! term    := par (';' par)*            composition, diagrammatic order
//! par     := postfix ('|' postfix)*    tensor
//! postfix := atom '^'*                 dual
//! atom    := '(' term ')' | 'id' '(' word ')' | 'sym' '(' word ';' word ')'
//!          | 'cup' '(' word ')' | ident
//! word    := [letter (',' letter)*]    letter := ident ['*']
//! ```
//!
//! `f ; g` means "first `f`, then `g`".

mod parse;
mod typecheck;

use std::fmt;

pub use parse::parse_term;
pub use typecheck::{dual_term, typecheck, Typed, TypedTerm};

use crate::signature::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    GenDual(String),
    Id(Word),
    Sym(Word, Word),
    Cup(Word),
    Comp(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    pub fn gen_dual(name: impl Into<String>) -> Term {
        Term::GenDual(name.into())
    }

    pub fn then(self, next: Term) -> Term {
        Term::Comp(Box::new(self), Box::new(next))
    }

    pub fn tensor(self, other: Term) -> Term {
        Term::Tensor(Box::new(self), Box::new(other))
    }

    /// Syntactic reflection: pushes the dual down to the generators.
    /// `None` when the term contains a cup, which has no dual.
    pub fn dual(&self) -> Option<Term> {
        Some(match self {
            Term::Gen(n) => Term::GenDual(n.clone()),
            Term::GenDual(n) => Term::Gen(n.clone()),
            Term::Id(w) => Term::Id(w.dual()),
            Term::Sym(v, w) => Term::Sym(w.dual(), v.dual()),
            Term::Cup(_) => return None,
            Term::Comp(a, b) => Term::Comp(Box::new(b.dual()?), Box::new(a.dual()?)),
            Term::Tensor(a, b) => Term::Tensor(Box::new(a.dual()?), Box::new(b.dual()?)),
        })
    }

    /// Number of generator occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Gen(_) | Term::GenDual(_) => 1,
            Term::Id(_) | Term::Sym(..) | Term::Cup(_) => 0,
            Term::Comp(a, b) | Term::Tensor(a, b) => a.size() + b.size(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: sequence, 1: tensor operand, 2: tensor right operand / atom
        match self {
            Term::Gen(n) => f.write_str(n),
            Term::GenDual(n) => write!(f, "{n}^"),
            Term::Id(w) => write!(f, "id({})", WordArgs(w)),
            Term::Sym(v, w) => write!(f, "sym({} ; {})", WordArgs(v), WordArgs(w)),
            Term::Cup(w) => write!(f, "cup({})", WordArgs(w)),
            Term::Comp(a, b) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 0)?;
                f.write_str(" ; ")?;
                b.fmt_prec(f, 1)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Tensor(a, b) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 1)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

struct WordArgs<'a>(&'a Word);

impl fmt::Display for WordArgs<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
