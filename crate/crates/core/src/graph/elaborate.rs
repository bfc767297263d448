use crate::signature::{Label, SignedObject};
use crate::term::{Typed, TypedTerm};

use super::{CircuitGraph, Edge, Node, Port};

/// A dangling wire end waiting for a consumer.
type Producer = (Port, SignedObject);

/// Builds the circuit graph of a typed term. Each cup over `n` letters
/// becomes `n` counit nodes; a starred letter enters its counit with the two
/// wires swapped.
pub fn elaborate(t: &TypedTerm) -> CircuitGraph {
    let mut g = CircuitGraph::new(t.dom.clone(), t.cod.clone());
    let inputs: Vec<Producer> = t
        .dom
        .iter()
        .enumerate()
        .map(|(i, l)| (Port::boundary(i), l.clone()))
        .collect();
    let outs = build(t, inputs, &mut g);
    for (i, (p, l)) in outs.into_iter().enumerate() {
        g.edges.push(Edge::new(p, Port::boundary(i), l));
    }
    g
}

fn build(t: &TypedTerm, mut inputs: Vec<Producer>, g: &mut CircuitGraph) -> Vec<Producer> {
    match &t.node {
        Typed::Gen { name, dualisable } => {
            let node = Node {
                label: Label::Gen(name.clone()),
                dom: t.dom.clone(),
                cod: t.cod.clone(),
                dualisable: *dualisable,
            };
            add_node(g, node, inputs)
        }
        Typed::GenDual { name } => {
            let node = Node {
                label: Label::Dual(name.clone()),
                dom: t.dom.clone(),
                cod: t.cod.clone(),
                dualisable: true,
            };
            add_node(g, node, inputs)
        }
        Typed::Id(_) => inputs,
        Typed::Sym(v, _) => {
            let mut rest = inputs.split_off(v.len());
            rest.extend(inputs);
            rest
        }
        Typed::Cup(w) => {
            let n = w.len();
            let duals = inputs.split_off(n);
            for (a, b) in inputs.into_iter().zip(duals) {
                let (plain, starred) = if a.1.starred { (b, a) } else { (a, b) };
                add_node(g, Node::counit(&plain.1.symbol), vec![plain, starred]);
            }
            Vec::new()
        }
        Typed::Comp(a, b) => {
            let mid = build(a, inputs, g);
            build(b, mid, g)
        }
        Typed::Tensor(a, b) => {
            let right = inputs.split_off(a.dom.len());
            let mut out = build(a, inputs, g);
            out.extend(build(b, right, g));
            out
        }
    }
}

fn add_node(g: &mut CircuitGraph, node: Node, inputs: Vec<Producer>) -> Vec<Producer> {
    let id = g.nodes.len();
    for (i, (p, l)) in inputs.into_iter().enumerate() {
        g.edges.push(Edge::new(p, Port::node(id, i), l));
    }
    let outs = node
        .cod
        .iter()
        .enumerate()
        .map(|(i, l)| (Port::node(id, i), l.clone()))
        .collect();
    g.nodes.push(node);
    outs
}
