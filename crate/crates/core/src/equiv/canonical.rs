use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use crate::graph::{Anchor, CircuitGraph};

/// Deterministic serialisation of a canonically renumbered circuit graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("canonical forms are utf-8")
    }
}

/// The far end of a port: a boundary port or a node port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Far {
    Input(usize),
    Output(usize),
    Node(usize, usize),
}

struct Adjacency {
    ins: Vec<Vec<Far>>,
    outs: Vec<Vec<Far>>,
    inputs: Vec<Far>,
}

fn adjacency(g: &CircuitGraph) -> Adjacency {
    let mut ins: Vec<Vec<Far>> = g.nodes.iter().map(|n| vec![Far::Input(0); n.dom.len()]).collect();
    let mut outs: Vec<Vec<Far>> = g.nodes.iter().map(|n| vec![Far::Output(0); n.cod.len()]).collect();
    let mut inputs = vec![Far::Output(0); g.inputs.len()];
    for e in &g.edges {
        let src = match e.source.anchor {
            Anchor::Boundary => Far::Input(e.source.index),
            Anchor::Node(n) => Far::Node(n, e.source.index),
        };
        let tgt = match e.target.anchor {
            Anchor::Boundary => Far::Output(e.target.index),
            Anchor::Node(n) => Far::Node(n, e.target.index),
        };
        match e.source.anchor {
            Anchor::Boundary => inputs[e.source.index] = tgt,
            Anchor::Node(n) => outs[n][e.source.index] = tgt,
        }
        if let Anchor::Node(n) = e.target.anchor {
            ins[n][e.target.index] = src;
        }
    }
    Adjacency { ins, outs, inputs }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Seen {
    Input(usize),
    Output(usize),
    Node(usize, usize),
}

/// Colour refinement seeded by label, type and boundary contacts. Colours
/// are ranks of sorted signatures, so they do not depend on node order.
fn colours(g: &CircuitGraph, adj: &Adjacency) -> Vec<usize> {
    let seen = |far: Far, colour: &[usize]| match far {
        Far::Input(i) => Seen::Input(i),
        Far::Output(i) => Seen::Output(i),
        Far::Node(n, p) => Seen::Node(colour[n], p),
    };
    let zero = vec![0; g.nodes.len()];
    let seed: Vec<(String, Vec<Option<Seen>>)> = g
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let contacts = adj.ins[i]
                .iter()
                .chain(&adj.outs[i])
                .map(|&f| match f {
                    Far::Node(..) => None,
                    other => Some(seen(other, &zero)),
                })
                .collect();
            (format!("{}|{}|{}|{}", n.label, n.parity(), n.dom, n.cod), contacts)
        })
        .collect();
    let mut colour = rank(&seed);
    loop {
        let classes = colour.iter().max().map_or(0, |m| m + 1);
        let sig: Vec<(usize, Vec<Seen>)> = (0..g.nodes.len())
            .map(|i| {
                let around = adj.ins[i]
                    .iter()
                    .chain(&adj.outs[i])
                    .map(|&f| seen(f, &colour))
                    .collect();
                (colour[i], around)
            })
            .collect();
        let next = rank(&sig);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        colour = next;
        if next_classes == classes {
            return colour;
        }
    }
}

/// Breadth-first numbering from the given start nodes, visiting input
/// ports then output ports in order.
fn number_from(adj: &Adjacency, starts: &[usize], order: &mut Vec<usize>, number: &mut [usize]) {
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in starts {
        if number[s] == usize::MAX {
            number[s] = order.len();
            order.push(s);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &f in adj.ins[v].iter().chain(&adj.outs[v]) {
            if let Far::Node(n, _) = f {
                if number[n] == usize::MAX {
                    number[n] = order.len();
                    order.push(n);
                    queue.push_back(n);
                }
            }
        }
    }
}

fn far_code(f: Far, number: &[usize]) -> String {
    match f {
        Far::Input(i) => format!("i{i}"),
        Far::Output(i) => format!("o{i}"),
        Far::Node(n, p) => format!("{}.{p}", number[n]),
    }
}

fn node_code(g: &CircuitGraph, adj: &Adjacency, v: usize, number: &[usize]) -> String {
    let n = &g.nodes[v];
    let mut s = format!("{}/{}:{}>{}(", n.label, n.parity(), n.dom, n.cod);
    let ins: Vec<String> = adj.ins[v].iter().map(|&f| far_code(f, number)).collect();
    let outs: Vec<String> = adj.outs[v].iter().map(|&f| far_code(f, number)).collect();
    let _ = write!(s, "{};{})", ins.join(","), outs.join(","));
    s
}

pub fn canonical_form(g: &CircuitGraph) -> CanonicalForm {
    let adj = adjacency(g);
    let colour = colours(g, &adj);
    let n = g.nodes.len();
    let mut number = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);

    let mut anchored_starts = Vec::new();
    let output_far: Vec<Far> = {
        let mut v = vec![Far::Input(0); g.outputs.len()];
        for e in &g.edges {
            if e.target.anchor == Anchor::Boundary {
                v[e.target.index] = match e.source.anchor {
                    Anchor::Boundary => Far::Input(e.source.index),
                    Anchor::Node(m) => Far::Node(m, e.source.index),
                };
            }
        }
        v
    };
    for f in adj.inputs.iter().chain(&output_far) {
        if let Far::Node(m, _) = *f {
            anchored_starts.push(m);
        }
    }
    number_from(&adj, &anchored_starts, &mut order, &mut number);
    let anchored = order.len();

    let mut out = String::new();
    let _ = writeln!(out, "in {}", g.inputs);
    let _ = writeln!(out, "out {}", g.outputs);
    let wires: Vec<String> = adj.inputs.iter().map(|&f| far_code(f, &number)).collect();
    let _ = writeln!(out, "wires {}", wires.join(","));
    for &v in &order[..anchored] {
        out.push_str(&node_code(g, &adj, v, &number));
        out.push('\n');
    }

    let mut free_codes: Vec<String> = Vec::new();
    for comp in g.components() {
        if number[comp[0]] != usize::MAX {
            continue;
        }
        let best = comp.iter().map(|&v| colour[v]).min().unwrap();
        let mut best_code: Option<String> = None;
        for &start in comp.iter().filter(|&&v| colour[v] == best) {
            let mut local_number = vec![usize::MAX; n];
            let mut local_order = Vec::with_capacity(comp.len());
            number_from(&adj, &[start], &mut local_order, &mut local_number);
            let code: String = local_order
                .iter()
                .map(|&v| node_code(g, &adj, v, &local_number) + "\n")
                .collect();
            if best_code.as_ref().is_none_or(|b| code < *b) {
                best_code = Some(code);
            }
        }
        free_codes.push(best_code.unwrap());
    }
    free_codes.sort();
    for c in free_codes {
        out.push_str("component\n");
        out.push_str(&c);
    }
    CanonicalForm {
        bytes: out.into_bytes(),
    }
}

/// Circuit isomorphism: a label-preserving bijection of nodes fixing the
/// boundary and carrying edges to edges.
pub fn circuit_iso(a: &CircuitGraph, b: &CircuitGraph) -> bool {
    a.inputs == b.inputs
        && a.outputs == b.outputs
        && a.nodes.len() == b.nodes.len()
        && label_counts(a) == label_counts(b)
        && canonical_form(a) == canonical_form(b)
}

fn label_counts(g: &CircuitGraph) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for n in &g.nodes {
        *m.entry(format!("{}:{}>{}", n.label, n.dom, n.cod)).or_insert(0) += 1;
    }
    m
}
