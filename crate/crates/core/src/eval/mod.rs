//! The contract a concrete teleological category implements, valuations of
//! a signature into one, and evaluation of circuit graphs.

mod functor;
mod laws;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::CircuitGraph;
use crate::signature::{Label, SignedObject, TeleologicalSignature, Word};

pub use functor::{check_functor, IdentityFunctor, TeleologicalFunctor};
pub use laws::{check_axioms, AxiomReport};

/// A strict symmetric monoidal category with counits and a partial dual.
/// Composition is diagrammatic: `compose(f, g)` is "f, then g".
pub trait TeleologicalCategory {
    type Object: Clone + PartialEq + fmt::Debug + fmt::Display;
    type Morphism: Clone + fmt::Debug;

    fn unit(&self) -> Self::Object;
    fn tensor_objects(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;
    fn dual_object(&self, a: &Self::Object) -> Self::Object;

    fn dom(&self, f: &Self::Morphism) -> Self::Object;
    fn cod(&self, f: &Self::Morphism) -> Self::Object;

    fn identity(&self, a: &Self::Object) -> Self::Morphism;
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;
    fn tensor(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    /// `σ_{A,B} : A ⊗ B → B ⊗ A`.
    fn symmetry(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism;
    /// `ε_A : A ⊗ A* → I`.
    fn counit(&self, a: &Self::Object) -> Self::Morphism;
    /// Defined exactly on the dualisable morphisms.
    fn dual(&self, f: &Self::Morphism) -> Option<Self::Morphism>;
    fn morphism_eq(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool;

    fn tensor_all(&self, objects: &[Self::Object]) -> Self::Object {
        objects.iter().fold(self.unit(), |acc, o| self.tensor_objects(&acc, o))
    }
}

/// Values for the symbols of a signature.
pub struct Valuation<C: TeleologicalCategory> {
    pub objects: BTreeMap<String, C::Object>,
    pub morphisms: BTreeMap<String, C::Morphism>,
}

impl<C: TeleologicalCategory> Clone for Valuation<C> {
    fn clone(&self) -> Self {
        Valuation {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }
}

impl<C: TeleologicalCategory> Default for Valuation<C> {
    fn default() -> Self {
        Valuation {
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        }
    }
}

impl<C: TeleologicalCategory> fmt::Debug for Valuation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Valuation")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms)
            .finish()
    }
}

impl<C: TeleologicalCategory> Valuation<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_object(mut self, name: impl Into<String>, o: C::Object) -> Self {
        self.objects.insert(name.into(), o);
        self
    }

    pub fn with_morphism(mut self, name: impl Into<String>, m: C::Morphism) -> Self {
        self.morphisms.insert(name.into(), m);
        self
    }

    /// Checks that every symbol is mapped, that types agree, and that
    /// dualisable symbols land on dualisable morphisms.
    pub fn check(&self, cat: &C, sig: &TeleologicalSignature) -> Result<()> {
        for o in &sig.objects {
            if !self.objects.contains_key(o) {
                return Err(Error::UnmappedSymbol(o.clone()));
            }
        }
        for m in &sig.morphisms {
            let value = self
                .morphisms
                .get(&m.name)
                .ok_or_else(|| Error::UnmappedSymbol(m.name.clone()))?;
            let dom = eval_word(cat, &m.dom, self)?;
            let cod = eval_word(cat, &m.cod, self)?;
            if cat.dom(value) != dom || cat.cod(value) != cod {
                return Err(Error::Valuation(format!(
                    "`{}` should be {} → {}, its value is {} → {}",
                    m.name,
                    dom,
                    cod,
                    cat.dom(value),
                    cat.cod(value)
                )));
            }
            if m.dualisable && cat.dual(value).is_none() {
                return Err(Error::DualUndefined(m.name.clone()));
            }
        }
        Ok(())
    }

    fn letter(&self, cat: &C, l: &SignedObject) -> Result<C::Object> {
        let o = self
            .objects
            .get(&l.symbol)
            .ok_or_else(|| Error::UnmappedSymbol(l.symbol.clone()))?;
        Ok(if l.starred { cat.dual_object(o) } else { o.clone() })
    }
}

/// Left-nested tensor of the letters' values; starred letters go through
/// the object dual.
pub fn eval_word<C: TeleologicalCategory>(cat: &C, w: &Word, val: &Valuation<C>) -> Result<C::Object> {
    let mut acc = cat.unit();
    for l in w {
        acc = cat.tensor_objects(&acc, &val.letter(cat, l)?);
    }
    Ok(acc)
}

/// Evaluates a valid circuit graph, one node per layer in a fixed
/// topological order.
pub fn evaluate<C: TeleologicalCategory>(cat: &C, g: &CircuitGraph, val: &Valuation<C>) -> Result<C::Morphism> {
    let order = g
        .topological_order()
        .ok_or(crate::graph::GraphViolation::Cycle { node: 0 })?;
    evaluate_with_order(cat, g, val, &order)
}

/// Evaluates with a caller-chosen topological order of the nodes. Each
/// layer moves the node's input wires to the front with symmetries, applies
/// `node ⊗ id`, and the last layer permutes wires into output order.
pub fn evaluate_with_order<C: TeleologicalCategory>(
    cat: &C,
    g: &CircuitGraph,
    val: &Valuation<C>,
    order: &[usize],
) -> Result<C::Morphism> {
    if !g.is_topological_order(order) {
        return Err(Error::Valuation("node order is not topological".into()));
    }
    let mut letters: BTreeMap<&SignedObject, C::Object> = BTreeMap::new();
    for e in &g.edges {
        if !letters.contains_key(&e.object) {
            letters.insert(&e.object, val.letter(cat, &e.object)?);
        }
    }
    let obj = |e: usize| letters[&g.edges[e].object].clone();
    let objs = |ws: &[usize]| cat.tensor_all(&ws.iter().map(|&e| obj(e)).collect::<Vec<_>>());

    let in_edges = g.in_edges();
    let out_edges = g.out_edges();
    let mut wires = g.input_edges();
    let mut acc = cat.identity(&objs(&wires));

    let bring_to_front = |acc: &mut C::Morphism, wires: &mut Vec<usize>, needed: &[usize]| -> Result<()> {
        for (i, &e) in needed.iter().enumerate() {
            let p = wires.iter().position(|&w| w == e).expect("wire is live");
            if p > i {
                let step = cat.tensor(
                    &cat.tensor(
                        &cat.identity(&objs(&wires[..i])),
                        &cat.symmetry(&objs(&wires[i..p]), &obj(e)),
                    ),
                    &cat.identity(&objs(&wires[p + 1..])),
                );
                *acc = cat.compose(acc, &step)?;
                wires.remove(p);
                wires.insert(i, e);
            }
        }
        Ok(())
    };

    for &v in order {
        bring_to_front(&mut acc, &mut wires, &in_edges[v])?;
        let k = in_edges[v].len();
        let m = node_value(cat, g, v, val)?;
        let layer = cat.tensor(&m, &cat.identity(&objs(&wires[k..])));
        acc = cat.compose(&acc, &layer)?;
        let mut next = out_edges[v].clone();
        next.extend_from_slice(&wires[k..]);
        wires = next;
    }
    bring_to_front(&mut acc, &mut wires, &g.output_edges())?;
    Ok(acc)
}

fn node_value<C: TeleologicalCategory>(cat: &C, g: &CircuitGraph, v: usize, val: &Valuation<C>) -> Result<C::Morphism> {
    match &g.nodes[v].label {
        Label::Gen(name) => val
            .morphisms
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnmappedSymbol(name.clone())),
        Label::Dual(name) => {
            let f = val
                .morphisms
                .get(name)
                .ok_or_else(|| Error::UnmappedSymbol(name.clone()))?;
            cat.dual(f).ok_or_else(|| Error::DualUndefined(name.clone()))
        }
        Label::Counit(x) => {
            let o = val.objects.get(x).ok_or_else(|| Error::UnmappedSymbol(x.clone()))?;
            Ok(cat.counit(o))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;
    use crate::graph::elaborate;
    use crate::lens::{adaptor, lens_id, FinLensCategory, LensObject};
    use crate::rel::{rel_counit, FinRel, FinRelCategory};
    use crate::signature::MorphismDecl;
    use crate::term::{parse_term, typecheck};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn sig() -> TeleologicalSignature {
        TeleologicalSignature::new()
            .with_object("x")
            .with_object("y")
            .with_morphism(MorphismDecl::new("f", w("x"), w("y"), true))
    }

    fn graph(text: &str) -> CircuitGraph {
        elaborate(&typecheck(&parse_term(text).unwrap(), &sig()).unwrap())
    }

    #[test]
    fn rel_cup_is_diagonal() {
        let x = FinSet::range("X", 2);
        let val = Valuation::<FinRelCategory>::new()
            .with_object("x", x.clone())
            .with_object("y", x.clone())
            .with_morphism("f", FinRel::from_pairs(x.clone(), x.clone(), &[(0, 1)]));
        let r = evaluate(&FinRelCategory, &graph("cup(x)"), &val).unwrap();
        assert_eq!(r, rel_counit(&x));
        assert_eq!(eval_word(&FinRelCategory, &w("x*"), &val).unwrap(), x);
    }

    #[test]
    fn lens_identity_and_counit_law() {
        let a = LensObject::new(FinSet::range("A", 2), FinSet::range("B", 3));
        let c = LensObject::new(FinSet::range("C", 3), FinSet::range("D", 2));
        let f = adaptor(&a, &c, &[2, 0], &[1, 2]).unwrap();
        let val = Valuation::<FinLensCategory>::new()
            .with_object("x", a.clone())
            .with_object("y", c.clone())
            .with_morphism("f", f.clone());
        val.check(&FinLensCategory, &sig()).unwrap();
        assert_eq!(evaluate(&FinLensCategory, &graph("id(x)"), &val).unwrap(), lens_id(&a));
        assert_eq!(evaluate(&FinLensCategory, &graph("f"), &val).unwrap(), f);
        let lhs = evaluate(&FinLensCategory, &graph("(f | id(y*)) ; cup(y)"), &val).unwrap();
        let rhs = evaluate(&FinLensCategory, &graph("(id(x) | f^) ; cup(x)"), &val).unwrap();
        assert_eq!(lhs, rhs);
        let xy = LensObject::new(a.forward.product(&c.backward), a.backward.product(&c.forward));
        assert_eq!(eval_word(&FinLensCategory, &w("x, y*"), &val).unwrap(), xy);
    }

    #[test]
    fn layer_orders_agree() {
        let x = FinSet::range("X", 2);
        let y = FinSet::range("Y", 3);
        let val = Valuation::<FinRelCategory>::new()
            .with_object("x", x.clone())
            .with_object("y", y.clone())
            .with_morphism("f", FinRel::from_pairs(x, y, &[(0, 1), (1, 2), (1, 0)]));
        let g = graph("(f | f | f) ; sym(y ; y, y)");
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let reference = evaluate(&FinRelCategory, &g, &val).unwrap();
        for o in orders {
            assert_eq!(evaluate_with_order(&FinRelCategory, &g, &val, &o).unwrap(), reference);
        }
    }

    #[test]
    fn missing_symbols_are_reported() {
        let val = Valuation::<FinRelCategory>::new().with_object("x", FinSet::range("X", 2));
        assert_eq!(
            evaluate(&FinRelCategory, &graph("cup(y)"), &val).unwrap_err(),
            Error::UnmappedSymbol("y".into())
        );
        assert_eq!(
            val.check(&FinRelCategory, &sig()).unwrap_err(),
            Error::UnmappedSymbol("y".into())
        );
    }
}
