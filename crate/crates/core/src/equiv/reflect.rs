use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{validate_graph, Anchor, CircuitGraph, Edge, Node, Port};
use crate::signature::SignedObject;

use super::canonical::{canonical_form, CanonicalForm};

/// A set of node indices to reflect. Only nodes carrying a dualisable
/// symbol or its dual may appear.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReflectionSubset {
    pub nodes: BTreeSet<usize>,
}

impl ReflectionSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl FromIterator<usize> for ReflectionSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ReflectionSubset {
            nodes: iter.into_iter().collect(),
        }
    }
}

/// A wire end after reflection. Producers are input boundary ports and node
/// outputs; consumers are output boundary ports and node inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Producer(Port),
    Consumer(Port),
}

/// Reflects the nodes of `r`. Wires are traced through counit nodes, each
/// node in `r` swaps its port sides, and every wire is rebuilt: a producer
/// meeting a consumer becomes an edge, two producers meet in a fresh
/// counit, and two consumers would need a unit, which does not exist.
pub fn reflect_subset(g: &CircuitGraph, r: &ReflectionSubset) -> Result<CircuitGraph> {
    if r.is_empty() {
        return Ok(g.clone());
    }
    for &v in &r.nodes {
        match g.nodes.get(v) {
            Some(n) if n.is_reflectable() => {}
            Some(n) => {
                return Err(Error::InfeasibleSubset(format!(
                    "node {v} ({}) cannot be reflected",
                    n.label
                )))
            }
            None => return Err(Error::InfeasibleSubset(format!("node {v} does not exist"))),
        }
    }

    let mut renumber = vec![usize::MAX; g.nodes.len()];
    let mut nodes = Vec::new();
    for (i, n) in g.nodes.iter().enumerate() {
        if n.label.is_counit() {
            continue;
        }
        renumber[i] = nodes.len();
        nodes.push(if r.nodes.contains(&i) { n.reflected() } else { n.clone() });
    }

    let flip = |p: Port, producer: bool| -> End {
        let (p, reflected) = match p.anchor {
            Anchor::Boundary => (p, false),
            Anchor::Node(n) => (Port::node(renumber[n], p.index), r.nodes.contains(&n)),
        };
        if producer != reflected {
            End::Producer(p)
        } else {
            End::Consumer(p)
        }
    };

    let mut caps: BTreeMap<usize, [Option<Port>; 2]> = BTreeMap::new();
    let mut wires: Vec<(End, End)> = Vec::new();
    for e in &g.edges {
        match e.target.anchor {
            Anchor::Node(n) if g.nodes[n].label.is_counit() => {
                caps.entry(n).or_insert([None, None])[e.target.index] = Some(e.source);
            }
            _ => wires.push((flip(e.source, true), flip(e.target, false))),
        }
    }
    for (_, [a, b]) in caps {
        let (a, b) = (a.expect("valid counit"), b.expect("valid counit"));
        wires.push((flip(a, true), flip(b, true)));
    }

    let mut out = CircuitGraph {
        nodes,
        edges: Vec::new(),
        inputs: g.inputs.clone(),
        outputs: g.outputs.clone(),
    };
    let mut new_caps: Vec<(SignedObject, Port, Port)> = Vec::new();
    for (a, b) in wires {
        match (a, b) {
            (End::Producer(p), End::Consumer(c)) | (End::Consumer(c), End::Producer(p)) => {
                let object = out.source_letter(p).expect("port exists").clone();
                out.edges.push(Edge::new(p, c, object));
            }
            (End::Producer(p), End::Producer(q)) => {
                let lp = out.source_letter(p).expect("port exists").clone();
                let lq = out.source_letter(q).expect("port exists").clone();
                if lp.symbol != lq.symbol || lp.starred == lq.starred {
                    return Err(Error::InfeasibleSubset(format!(
                        "cannot join {lp} and {lq} in a counit"
                    )));
                }
                let (plain, starred) = if lp.starred { (q, p) } else { (p, q) };
                new_caps.push((SignedObject::plain(lp.symbol), plain, starred));
            }
            (End::Consumer(_), End::Consumer(_)) => {
                return Err(Error::InfeasibleSubset(
                    "a wire would bend backward to forward, which needs a unit".into(),
                ));
            }
        }
    }
    for (object, plain, starred) in new_caps {
        let id = out.nodes.len();
        out.nodes.push(Node::counit(&object.symbol));
        out.edges.push(Edge::new(plain, Port::node(id, 0), object.clone()));
        out.edges.push(Edge::new(starred, Port::node(id, 1), object.dual()));
    }
    validate_graph(&out).map_err(|v| Error::InfeasibleSubset(v.to_string()))?;
    Ok(out)
}

/// A reflection subset of `a` whose reflection is circuit-isomorphic to
/// `b`, if one exists. Subsets are generated per symbol so that the number
/// of `f` and `f*` nodes matches `b` before any graph is built; the empty
/// subset is tried first.
pub fn teleo_witness(a: &CircuitGraph, b: &CircuitGraph) -> Option<ReflectionSubset> {
    if a.inputs != b.inputs || a.outputs != b.outputs {
        return None;
    }
    let target = canonical_form(b);
    let counts = |g: &CircuitGraph| {
        let mut m: BTreeMap<String, [usize; 2]> = BTreeMap::new();
        for n in g.nodes.iter().filter(|n| !n.label.is_counit()) {
            m.entry(n.label.base().to_string()).or_insert([0, 0])[n.parity() as usize] += 1;
        }
        m
    };
    let (ca, cb) = (counts(a), counts(b));
    if ca.keys().ne(cb.keys()) {
        return None;
    }

    let mut per_symbol: Vec<Vec<Vec<usize>>> = Vec::new();
    for (name, have) in &ca {
        let want = cb[name];
        if have[0] + have[1] != want[0] + want[1] {
            return None;
        }
        let movable: Vec<usize> = a
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.label.base() == name && !n.label.is_counit() && n.is_reflectable())
            .map(|(i, _)| i)
            .collect();
        let mut options = Vec::new();
        for mask in 0u64..(1u64 << movable.len()) {
            let chosen: Vec<usize> = (0..movable.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| movable[k])
                .collect();
            let flipped0 = chosen.iter().filter(|&&v| a.nodes[v].parity() == 0).count();
            let flipped1 = chosen.len() - flipped0;
            if have[0] - flipped0 + flipped1 == want[0] {
                options.push(chosen);
            }
        }
        if options.is_empty() {
            return None;
        }
        options.sort_by_key(Vec::len);
        per_symbol.push(options);
    }

    let mut pick = vec![0usize; per_symbol.len()];
    loop {
        let r: ReflectionSubset = pick
            .iter()
            .zip(&per_symbol)
            .flat_map(|(&k, opts)| opts[k].iter().copied())
            .collect();
        if matches_target(a, &r, &target) {
            return Some(r);
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return None;
            }
            pick[i] += 1;
            if pick[i] < per_symbol[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn matches_target(a: &CircuitGraph, r: &ReflectionSubset, target: &CanonicalForm) -> bool {
    match reflect_subset(a, r) {
        Ok(g) => canonical_form(&g) == *target,
        Err(_) => false,
    }
}

/// Teleological equivalence: some single reflection of `a` is circuit
/// isomorphic to `b`.
pub fn teleo_eq(a: &CircuitGraph, b: &CircuitGraph) -> bool {
    teleo_witness(a, b).is_some()
}
