//! Circuit graphs: progressive port graphs over an expanded monoidal
//! signature. Caps never appear as wires; each one is an explicit ε node.
//!
//! Edges always run from a producer (a node output or an input boundary
//! port) to a consumer (a node input or an output boundary port), i.e. in
//! circuit time. The variance of an endpoint is the star of its letter.

mod dot;
mod elaborate;

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::signature::{Label, MonoidalSignature, SignedObject, Word};

pub use dot::render_dot;
pub use elaborate::elaborate;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: Label,
    pub dom: Word,
    pub cod: Word,
    /// Whether the underlying symbol may be reflected.
    pub dualisable: bool,
}

impl Node {
    pub fn parity(&self) -> u8 {
        self.label.parity()
    }

    /// Whether this node may take part in a reflection subset.
    pub fn is_reflectable(&self) -> bool {
        match self.label {
            Label::Gen(_) => self.dualisable,
            Label::Dual(_) => true,
            Label::Counit(_) => false,
        }
    }

    pub fn reflected(&self) -> Node {
        Node {
            label: self.label.flipped(),
            dom: self.cod.dual(),
            cod: self.dom.dual(),
            dualisable: self.dualisable,
        }
    }

    pub fn counit(symbol: &str) -> Node {
        Node {
            label: Label::Counit(symbol.to_string()),
            dom: Word::new(vec![SignedObject::plain(symbol), SignedObject::starred(symbol)]),
            cod: Word::unit(),
            dualisable: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Anchor {
    Boundary,
    Node(usize),
}

/// A port. On the boundary, a source port indexes the inputs and a target
/// port indexes the outputs; on a node, sources are outputs and targets
/// are inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Port {
    pub anchor: Anchor,
    pub index: usize,
}

impl Port {
    pub fn boundary(index: usize) -> Port {
        Port {
            anchor: Anchor::Boundary,
            index,
        }
    }

    pub fn node(node: usize, index: usize) -> Port {
        Port {
            anchor: Anchor::Node(node),
            index,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn of(letter: &SignedObject) -> Variance {
        if letter.starred {
            Variance::Contravariant
        } else {
            Variance::Covariant
        }
    }

    fn mark(self) -> char {
        match self {
            Variance::Covariant => '+',
            Variance::Contravariant => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: Port,
    pub target: Port,
    pub object: SignedObject,
    pub variance: (Variance, Variance),
}

impl Edge {
    /// An edge whose variance marks follow its letter.
    pub fn new(source: Port, target: Port, object: SignedObject) -> Edge {
        let v = Variance::of(&object);
        Edge {
            source,
            target,
            object,
            variance: (v, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub inputs: Word,
    pub outputs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphViolation {
    #[error("edge {edge} refers to a missing port")]
    DanglingEdge { edge: usize },
    #[error("{side} port {port} of {anchor} has {count} edges, expected exactly one")]
    PortDegree {
        anchor: String,
        side: &'static str,
        port: usize,
        count: usize,
    },
    #[error("edge {edge} carries {object} but its endpoints have {source_letter} and {target_letter}")]
    ObjectMismatch {
        edge: usize,
        object: SignedObject,
        source_letter: SignedObject,
        target_letter: SignedObject,
    },
    #[error("edge {edge} has forbidden variance (-,+)")]
    ForbiddenVariance { edge: usize },
    #[error("edge {edge} has variance marks that disagree with its letter")]
    VarianceMark { edge: usize },
    #[error("precedence cycle through node {node}")]
    Cycle { node: usize },
    #[error("node {node} has label {label} outside the signature")]
    UnknownLabel { node: usize, label: Label },
    #[error("node {node} ({label}) has type {found}, signature says {expected}")]
    Arity {
        node: usize,
        label: Label,
        found: String,
        expected: String,
    },
}

fn anchor_name(a: Anchor) -> String {
    match a {
        Anchor::Boundary => "boundary".into(),
        Anchor::Node(n) => format!("node {n}"),
    }
}

impl CircuitGraph {
    pub fn new(inputs: Word, outputs: Word) -> Self {
        CircuitGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            inputs,
            outputs,
        }
    }

    /// The letter at a source port, if the port exists.
    pub fn source_letter(&self, p: Port) -> Option<&SignedObject> {
        match p.anchor {
            Anchor::Boundary => self.inputs.letters().get(p.index),
            Anchor::Node(n) => self.nodes.get(n)?.cod.letters().get(p.index),
        }
    }

    /// The letter at a target port, if the port exists.
    pub fn target_letter(&self, p: Port) -> Option<&SignedObject> {
        match p.anchor {
            Anchor::Boundary => self.outputs.letters().get(p.index),
            Anchor::Node(n) => self.nodes.get(n)?.dom.letters().get(p.index),
        }
    }

    /// Edge index at each input of each node, in port order. Assumes a
    /// valid graph.
    pub fn in_edges(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.nodes.iter().map(|n| vec![usize::MAX; n.dom.len()]).collect();
        for (i, e) in self.edges.iter().enumerate() {
            if let Anchor::Node(n) = e.target.anchor {
                out[n][e.target.index] = i;
            }
        }
        out
    }

    /// Edge index at each output of each node, in port order.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.nodes.iter().map(|n| vec![usize::MAX; n.cod.len()]).collect();
        for (i, e) in self.edges.iter().enumerate() {
            if let Anchor::Node(n) = e.source.anchor {
                out[n][e.source.index] = i;
            }
        }
        out
    }

    /// Edge index at each input boundary port.
    pub fn input_edges(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.inputs.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if e.source.anchor == Anchor::Boundary {
                out[e.source.index] = i;
            }
        }
        out
    }

    /// Edge index at each output boundary port.
    pub fn output_edges(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.outputs.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if e.target.anchor == Anchor::Boundary {
                out[e.target.index] = i;
            }
        }
        out
    }

    /// Kahn order of the precedence digraph, smallest ready node first.
    /// `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            if let (Anchor::Node(a), Anchor::Node(b)) = (e.source.anchor, e.target.anchor) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&a) = ready.iter().next() {
            ready.remove(&a);
            order.push(a);
            for &b in &succ[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Whether `order` lists every node once, respecting all edges.
    pub fn is_topological_order(&self, order: &[usize]) -> bool {
        let n = self.nodes.len();
        if order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.edges.iter().all(|e| match (e.source.anchor, e.target.anchor) {
            (Anchor::Node(a), Anchor::Node(b)) => pos[a] < pos[b],
            _ => true,
        })
    }

    /// Nodes with the given label, in index order.
    pub fn nodes_labelled<'a>(&'a self, label: &'a Label) -> impl Iterator<Item = usize> + 'a {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| &n.label == label)
            .map(|(i, _)| i)
    }

    /// Reflection of a cap-free graph in the time direction: every node is
    /// flipped, every edge reversed, and the boundaries swap and star.
    /// `None` when the graph has an ε node or a non-dualisable node.
    pub fn dual(&self) -> Option<CircuitGraph> {
        if !self.nodes.iter().all(Node::is_reflectable) {
            return None;
        }
        Some(CircuitGraph {
            nodes: self.nodes.iter().map(Node::reflected).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.target, e.source, e.object.dual()))
                .collect(),
            inputs: self.outputs.dual(),
            outputs: self.inputs.dual(),
        })
    }

    /// Undirected connected components of the node set, ignoring the
    /// boundary. Components are listed by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            if let (Anchor::Node(a), Anchor::Node(b)) = (e.source.anchor, e.target.anchor) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Display for CircuitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs: {}", self.inputs)?;
        writeln!(f, "outputs: {}", self.outputs)?;
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(f, "n{i}: {} : {} → {} (parity {})", n.label, n.dom, n.cod, n.parity())?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "{} → {} : {} ({},{})",
                port_name(e.source, "in"),
                port_name(e.target, "out"),
                e.object,
                e.variance.0.mark(),
                e.variance.1.mark()
            )?;
        }
        Ok(())
    }
}

fn port_name(p: Port, boundary_side: &str) -> String {
    match p.anchor {
        Anchor::Boundary => format!("{boundary_side}[{}]", p.index),
        Anchor::Node(n) => format!("n{n}[{}]", p.index),
    }
}

/// Checks boundary and port degrees, edge direction, letters, variance
/// marks and acyclicity. Reports the first violation found.
pub fn validate_graph(g: &CircuitGraph) -> Result<(), GraphViolation> {
    let mut in_count = vec![0usize; g.inputs.len()];
    let mut out_count = vec![0usize; g.outputs.len()];
    let mut node_in: Vec<Vec<usize>> = g.nodes.iter().map(|n| vec![0; n.dom.len()]).collect();
    let mut node_out: Vec<Vec<usize>> = g.nodes.iter().map(|n| vec![0; n.cod.len()]).collect();

    for (i, e) in g.edges.iter().enumerate() {
        if let Anchor::Node(n) = e.source.anchor {
            if n >= g.nodes.len() {
                return Err(GraphViolation::DanglingEdge { edge: i });
            }
        }
        if let Anchor::Node(n) = e.target.anchor {
            if n >= g.nodes.len() {
                return Err(GraphViolation::DanglingEdge { edge: i });
            }
        }
        let (Some(sl), Some(tl)) = (g.source_letter(e.source), g.target_letter(e.target)) else {
            return Err(GraphViolation::DanglingEdge { edge: i });
        };
        if e.variance == (Variance::Contravariant, Variance::Covariant) {
            return Err(GraphViolation::ForbiddenVariance { edge: i });
        }
        if e.variance.0 != Variance::of(sl) || e.variance.1 != Variance::of(tl) {
            return Err(GraphViolation::VarianceMark { edge: i });
        }
        if sl != &e.object || tl != &e.object {
            return Err(GraphViolation::ObjectMismatch {
                edge: i,
                object: e.object.clone(),
                source_letter: sl.clone(),
                target_letter: tl.clone(),
            });
        }
        match e.source.anchor {
            Anchor::Boundary => in_count[e.source.index] += 1,
            Anchor::Node(n) => node_out[n][e.source.index] += 1,
        }
        match e.target.anchor {
            Anchor::Boundary => out_count[e.target.index] += 1,
            Anchor::Node(n) => node_in[n][e.target.index] += 1,
        }
    }

    let degree = |anchor: Anchor, side: &'static str, counts: &[usize]| {
        counts
            .iter()
            .position(|&c| c != 1)
            .map(|port| GraphViolation::PortDegree {
                anchor: anchor_name(anchor),
                side,
                port,
                count: counts[port],
            })
    };
    if let Some(v) = degree(Anchor::Boundary, "input", &in_count) {
        return Err(v);
    }
    if let Some(v) = degree(Anchor::Boundary, "output", &out_count) {
        return Err(v);
    }
    for n in 0..g.nodes.len() {
        if let Some(v) = degree(Anchor::Node(n), "input", &node_in[n]) {
            return Err(v);
        }
        if let Some(v) = degree(Anchor::Node(n), "output", &node_out[n]) {
            return Err(v);
        }
    }

    if g.topological_order().is_none() {
        let node = first_cycle_node(g);
        return Err(GraphViolation::Cycle { node });
    }
    Ok(())
}

fn first_cycle_node(g: &CircuitGraph) -> usize {
    // Nodes left after repeatedly peeling sources and sinks lie on or
    // between cycles; report the smallest.
    let n = g.nodes.len();
    let mut alive = vec![true; n];
    loop {
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &g.edges {
            if let (Anchor::Node(a), Anchor::Node(b)) = (e.source.anchor, e.target.anchor) {
                if alive[a] && alive[b] {
                    outdeg[a] += 1;
                    indeg[b] += 1;
                }
            }
        }
        let mut changed = false;
        for i in 0..n {
            if alive[i] && (indeg[i] == 0 || outdeg[i] == 0) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return alive.iter().position(|&a| a).unwrap_or(0);
        }
    }
}

/// [`validate_graph`] plus a check that every node label is declared in
/// `m` with the node's type.
pub fn validate_graph_against(g: &CircuitGraph, m: &MonoidalSignature) -> Result<(), GraphViolation> {
    for (i, n) in g.nodes.iter().enumerate() {
        let decl = m.get(&n.label).ok_or_else(|| GraphViolation::UnknownLabel {
            node: i,
            label: n.label.clone(),
        })?;
        if decl.dom != n.dom || decl.cod != n.cod {
            return Err(GraphViolation::Arity {
                node: i,
                label: n.label.clone(),
                found: format!("{} → {}", n.dom, n.cod),
                expected: format!("{} → {}", decl.dom, decl.cod),
            });
        }
    }
    validate_graph(g)
}
