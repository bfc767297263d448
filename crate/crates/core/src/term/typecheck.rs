use crate::error::{Error, Result};
use crate::signature::{word_dual, TeleologicalSignature, Word};

use super::Term;

/// A term annotated with its domain and codomain at every subterm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedTerm {
    pub node: Typed,
    pub dom: Word,
    pub cod: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Typed {
    Gen { name: String, dualisable: bool },
    GenDual { name: String },
    Id(Word),
    Sym(Word, Word),
    Cup(Word),
    Comp(Box<TypedTerm>, Box<TypedTerm>),
    Tensor(Box<TypedTerm>, Box<TypedTerm>),
}

impl TypedTerm {
    /// The underlying untyped term.
    pub fn term(&self) -> Term {
        match &self.node {
            Typed::Gen { name, .. } => Term::Gen(name.clone()),
            Typed::GenDual { name } => Term::GenDual(name.clone()),
            Typed::Id(w) => Term::Id(w.clone()),
            Typed::Sym(v, w) => Term::Sym(v.clone(), w.clone()),
            Typed::Cup(w) => Term::Cup(w.clone()),
            Typed::Comp(a, b) => Term::Comp(Box::new(a.term()), Box::new(b.term())),
            Typed::Tensor(a, b) => Term::Tensor(Box::new(a.term()), Box::new(b.term())),
        }
    }

    /// True when every generator is dualisable and no cup occurs.
    pub fn is_dualisable(&self) -> bool {
        match &self.node {
            Typed::Gen { dualisable, .. } => *dualisable,
            Typed::GenDual { .. } | Typed::Id(_) | Typed::Sym(..) => true,
            Typed::Cup(_) => false,
            Typed::Comp(a, b) | Typed::Tensor(a, b) => a.is_dualisable() && b.is_dualisable(),
        }
    }
}

pub fn typecheck(t: &Term, s: &TeleologicalSignature) -> Result<TypedTerm> {
    let (node, dom, cod) = match t {
        Term::Gen(name) => {
            let m = s.morphism(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            (
                Typed::Gen {
                    name: name.clone(),
                    dualisable: m.dualisable,
                },
                m.dom.clone(),
                m.cod.clone(),
            )
        }
        Term::GenDual(name) => {
            let m = s.morphism(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            if !m.dualisable {
                return Err(Error::NotDualisable(name.clone()));
            }
            (
                Typed::GenDual { name: name.clone() },
                word_dual(&m.cod),
                word_dual(&m.dom),
            )
        }
        Term::Id(w) => {
            s.check_word(w)?;
            (Typed::Id(w.clone()), w.clone(), w.clone())
        }
        Term::Sym(v, w) => {
            s.check_word(v)?;
            s.check_word(w)?;
            (Typed::Sym(v.clone(), w.clone()), v.concat(w), w.concat(v))
        }
        Term::Cup(w) => {
            s.check_word(w)?;
            (Typed::Cup(w.clone()), w.concat(&word_dual(w)), Word::unit())
        }
        Term::Comp(a, b) => {
            let ta = typecheck(a, s)?;
            let tb = typecheck(b, s)?;
            if ta.cod != tb.dom {
                return Err(Error::TypeMismatch {
                    context: t.to_string(),
                    cod: ta.cod,
                    dom: tb.dom,
                });
            }
            let (dom, cod) = (ta.dom.clone(), tb.cod.clone());
            (Typed::Comp(Box::new(ta), Box::new(tb)), dom, cod)
        }
        Term::Tensor(a, b) => {
            let ta = typecheck(a, s)?;
            let tb = typecheck(b, s)?;
            let (dom, cod) = (ta.dom.concat(&tb.dom), ta.cod.concat(&tb.cod));
            (Typed::Tensor(Box::new(ta), Box::new(tb)), dom, cod)
        }
    };
    Ok(TypedTerm { node, dom, cod })
}

/// Reflects a cap-free term built from dualisable generators.
pub fn dual_term(t: &TypedTerm) -> Result<TypedTerm> {
    let node = match &t.node {
        Typed::Gen { name, dualisable } => {
            if !dualisable {
                return Err(Error::NotDualisable(name.clone()));
            }
            Typed::GenDual { name: name.clone() }
        }
        Typed::GenDual { name } => Typed::Gen {
            name: name.clone(),
            dualisable: true,
        },
        Typed::Id(w) => Typed::Id(word_dual(w)),
        Typed::Sym(v, w) => Typed::Sym(word_dual(w), word_dual(v)),
        Typed::Cup(w) => return Err(Error::NotDualisable(format!("cup({})", w))),
        Typed::Comp(a, b) => Typed::Comp(Box::new(dual_term(b)?), Box::new(dual_term(a)?)),
        Typed::Tensor(a, b) => Typed::Tensor(Box::new(dual_term(a)?), Box::new(dual_term(b)?)),
    };
    Ok(TypedTerm {
        node,
        dom: word_dual(&t.cod),
        cod: word_dual(&t.dom),
    })
}
