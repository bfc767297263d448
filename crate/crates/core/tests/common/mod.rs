//! Generators and oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use teleo::eval::Valuation;
use teleo::finset::{all_functions, FinSet};
use teleo::graph::{elaborate, Anchor, CircuitGraph, Edge, Port};
use teleo::lens::{adaptor, FinLens, FinLensCategory, LensObject};
use teleo::rel::{FinRel, FinRelCategory};
use teleo::signature::{MorphismDecl, SignedObject, TeleologicalSignature, Word};
use teleo::term::{typecheck, Term};

pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

/// Two objects, five dualisable symbols and one that is not.
pub fn signature() -> TeleologicalSignature {
    TeleologicalSignature::new()
        .with_object("x")
        .with_object("y")
        .with_morphism(MorphismDecl::new("f", w("x"), w("y"), true))
        .with_morphism(MorphismDecl::new("g", w("y"), w("x"), true))
        .with_morphism(MorphismDecl::new("m", w("x, y"), w("y"), true))
        .with_morphism(MorphismDecl::new("c", w("y"), w("x, x"), true))
        .with_morphism(MorphismDecl::new("s", w(""), w("x"), true))
        .with_morphism(MorphismDecl::new("k", w("x"), w("x"), false))
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub steps: usize,
    pub max_width: usize,
    pub cups: bool,
    pub only_dualisable: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            steps: 5,
            max_width: 4,
            cups: true,
            only_dualisable: false,
        }
    }
}

pub fn random_letter(rng: &mut StdRng, stars: bool) -> SignedObject {
    let sym = if rng.gen_bool(0.5) { "x" } else { "y" };
    if stars && rng.gen_bool(0.3) {
        SignedObject::starred(sym)
    } else {
        SignedObject::plain(sym)
    }
}

pub fn random_word(rng: &mut StdRng, min: usize, max: usize, stars: bool) -> Word {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| random_letter(rng, stars)).collect()
}

fn layer(prefix: Word, mid: Term, suffix: Word) -> Term {
    let mut t = mid;
    if !prefix.is_empty() {
        t = Term::Id(prefix).tensor(t);
    }
    if !suffix.is_empty() {
        t = t.tensor(Term::Id(suffix));
    }
    t
}

/// Generator occurrences (plain or reflected) that fit a slice of `cur`:
/// `(term, start, consumed length, produced word)`.
fn fits(sig: &TeleologicalSignature, cur: &Word, shape: &Shape) -> Vec<(Term, usize, usize, Word)> {
    let mut out = Vec::new();
    for d in &sig.morphisms {
        if shape.only_dualisable && !d.dualisable {
            continue;
        }
        let mut forms = vec![(Term::gen(d.name.clone()), d.dom.clone(), d.cod.clone())];
        if d.dualisable {
            forms.push((Term::gen_dual(d.name.clone()), d.cod.dual(), d.dom.dual()));
        }
        for (t, dom, cod) in forms {
            let k = dom.len();
            if k > cur.len() || cur.len() - k + cod.len() > shape.max_width {
                continue;
            }
            for i in 0..=cur.len() - k {
                if cur.slice(i..i + k) == dom {
                    out.push((t.clone(), i, k, cod.clone()));
                }
            }
        }
    }
    out
}

/// A random well-typed layered term out of `dom`, and its codomain.
pub fn random_term(rng: &mut StdRng, sig: &TeleologicalSignature, dom: &Word, shape: Shape) -> (Term, Word) {
    let mut cur = dom.clone();
    let mut layers: Vec<Term> = Vec::new();
    for _ in 0..shape.steps {
        let n = cur.len();
        let mut options: Vec<u8> = vec![0, 0, 0];
        if n >= 2 {
            options.push(1);
        }
        let cups: Vec<usize> = (0..n.saturating_sub(1))
            .filter(|&i| cur[i + 1] == cur[i].dual())
            .collect();
        if shape.cups && !cups.is_empty() {
            options.extend([2, 2]);
        }
        match *options.choose(rng).unwrap() {
            0 => {
                let cands = fits(sig, &cur, &shape);
                let Some((t, i, k, cod)) = cands.choose(rng).cloned() else {
                    continue;
                };
                layers.push(layer(cur.slice(0..i), t, cur.slice(i + k..n)));
                cur = cur.slice(0..i).concat(&cod).concat(&cur.slice(i + k..n));
            }
            1 => {
                let i = rng.gen_range(0..n - 1);
                let j = rng.gen_range(i + 1..n);
                let k = rng.gen_range(j + 1..=n);
                let (a, b) = (cur.slice(i..j), cur.slice(j..k));
                layers.push(layer(cur.slice(0..i), Term::Sym(a.clone(), b.clone()), cur.slice(k..n)));
                cur = cur.slice(0..i).concat(&b).concat(&a).concat(&cur.slice(k..n));
            }
            _ => {
                let i = *cups.choose(rng).unwrap();
                layers.push(layer(
                    cur.slice(0..i),
                    Term::Cup(cur.slice(i..i + 1)),
                    cur.slice(i + 2..n),
                ));
                cur = cur.slice(0..i).concat(&cur.slice(i + 2..n));
            }
        }
    }
    let t = layers
        .into_iter()
        .reduce(Term::then)
        .unwrap_or_else(|| Term::Id(dom.clone()));
    (t, cur)
}

/// A cap-free term built from dualisable symbols only.
pub fn dualisable_term(rng: &mut StdRng, sig: &TeleologicalSignature) -> Term {
    let dom = random_word(rng, 0, 3, true);
    let shape = Shape {
        steps: rng.gen_range(1..=6),
        max_width: 4,
        cups: false,
        only_dualisable: true,
    };
    random_term(rng, sig, &dom, shape).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rewrite {
    Interchange,
    SymmetryNaturality,
    CounitLaw,
    CounitTwist,
    CounitTensor,
}

impl Rewrite {
    pub const ALL: [Rewrite; 5] = [
        Rewrite::Interchange,
        Rewrite::SymmetryNaturality,
        Rewrite::CounitLaw,
        Rewrite::CounitTwist,
        Rewrite::CounitTensor,
    ];
}

/// One generator occurrence, plain or reflected, with its type.
fn random_atom(rng: &mut StdRng, sig: &TeleologicalSignature, dualisable: bool) -> (Term, Word, Word) {
    let ds: Vec<&MorphismDecl> = sig.morphisms.iter().filter(|d| d.dualisable || !dualisable).collect();
    let d = *ds.choose(rng).unwrap();
    if d.dualisable && rng.gen_bool(0.3) {
        (Term::gen_dual(d.name.clone()), d.cod.dual(), d.dom.dual())
    } else {
        (Term::gen(d.name.clone()), d.dom.clone(), d.cod.clone())
    }
}

/// Two sides of one axiom instance, of a common type.
pub fn axiom_instance(rng: &mut StdRng, sig: &TeleologicalSignature, rule: Rewrite) -> (Term, Term, Word) {
    match rule {
        Rewrite::Interchange => {
            let (a, da, ca) = random_atom(rng, sig, false);
            let (b, db, cb) = random_atom(rng, sig, false);
            let l = a
                .clone()
                .tensor(Term::Id(db.clone()))
                .then(Term::Id(ca.clone()).tensor(b.clone()));
            let r = Term::Id(da.clone()).tensor(b).then(a.tensor(Term::Id(cb)));
            (l, r, da.concat(&db))
        }
        Rewrite::SymmetryNaturality => {
            let (a, da, ca) = random_atom(rng, sig, false);
            let (b, db, cb) = random_atom(rng, sig, false);
            let l = a.clone().tensor(b.clone()).then(Term::Sym(ca, cb));
            let r = Term::Sym(da.clone(), db.clone()).then(b.tensor(a));
            (l, r, da.concat(&db))
        }
        Rewrite::CounitLaw => {
            let (f, a, b) = random_atom(rng, sig, true);
            let fs = f.dual().unwrap();
            let l = f.tensor(Term::Id(b.dual())).then(Term::Cup(b.clone()));
            let r = Term::Id(a.clone()).tensor(fs).then(Term::Cup(a.clone()));
            (l, r, a.concat(&b.dual()))
        }
        Rewrite::CounitTwist => {
            let v = random_word(rng, 1, 2, true);
            let l = Term::Cup(v.dual());
            let r = Term::Sym(v.dual(), v.clone()).then(Term::Cup(v.clone()));
            (l, r, v.dual().concat(&v))
        }
        Rewrite::CounitTensor => {
            let v = random_word(rng, 1, 1, true);
            let u = random_word(rng, 1, 1, true);
            let l = Term::Cup(v.concat(&u));
            let r = Term::Id(v.clone())
                .tensor(Term::Sym(u.clone(), v.dual()))
                .tensor(Term::Id(u.dual()))
                .then(Term::Cup(v.clone()).tensor(Term::Cup(u.clone())));
            (l, r, v.concat(&u).concat(&v.dual()).concat(&u.dual()))
        }
    }
}

fn context(rng: &mut StdRng, sig: &TeleologicalSignature, dom: &Word, shape: Shape) -> (Term, Word) {
    if dom.is_empty() {
        (Term::Id(Word::unit()), Word::unit())
    } else {
        random_term(rng, sig, dom, shape)
    }
}

/// An axiom instance placed in a random context: something in parallel on
/// either side, then a random continuation. Both sides are well typed.
pub fn rewrite_pair(rng: &mut StdRng, sig: &TeleologicalSignature, rule: Rewrite) -> (Term, Term) {
    loop {
        let (l, r, _) = axiom_instance(rng, sig, rule);
        let tl = typecheck(&l, sig).expect("axiom instance typechecks");
        let width = tl.dom.len();
        let room = 5usize.saturating_sub(width.max(tl.cod.len()));
        let small = Shape {
            steps: 2,
            max_width: 2,
            ..Shape::default()
        };
        let left = random_word(rng, 0, room.min(1), true);
        let (p, pc) = context(rng, sig, &left, small);
        let right = random_word(rng, 0, room.saturating_sub(left.len().max(pc.len())).min(1), true);
        let (q, qc) = context(rng, sig, &right, small);
        let mid = pc.concat(&tl.cod).concat(&qc);
        if mid.len() > 5 {
            continue;
        }
        let wrap = |hole: Term| {
            let mut t = hole;
            if !left.is_empty() {
                t = p.clone().tensor(t);
            }
            if !right.is_empty() {
                t = t.tensor(q.clone());
            }
            t
        };
        let shape = Shape {
            steps: rng.gen_range(0..=3),
            max_width: 5,
            ..Shape::default()
        };
        let (post, _) = random_term(rng, sig, &mid, shape);
        let (lhs, rhs) = (wrap(l).then(post.clone()), wrap(r).then(post));
        if typecheck(&lhs, sig).is_ok() && typecheck(&rhs, sig).is_ok() {
            return (lhs, rhs);
        }
    }
}

pub fn graph_of(t: &Term, sig: &TeleologicalSignature) -> CircuitGraph {
    elaborate(&typecheck(t, sig).unwrap_or_else(|e| panic!("{t}: {e}")))
}

/// The same graph with nodes and edges listed in a random order.
pub fn renumber(rng: &mut StdRng, g: &CircuitGraph) -> CircuitGraph {
    let mut perm: Vec<usize> = (0..g.nodes.len()).collect();
    perm.shuffle(rng);
    let mut nodes = g.nodes.clone();
    for (i, n) in g.nodes.iter().enumerate() {
        nodes[perm[i]] = n.clone();
    }
    let port = |p: Port| match p.anchor {
        Anchor::Boundary => p,
        Anchor::Node(n) => Port::node(perm[n], p.index),
    };
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| Edge::new(port(e.source), port(e.target), e.object.clone()))
        .collect();
    edges.shuffle(rng);
    CircuitGraph {
        nodes,
        edges,
        inputs: g.inputs.clone(),
        outputs: g.outputs.clone(),
    }
}

/// Isomorphism by trying every label-preserving bijection of nodes.
/// An edge as (source anchor, port), (target anchor, port) and its letter.
type EdgeKey = ((usize, usize), (usize, usize), SignedObject);

pub fn brute_force_iso(a: &CircuitGraph, b: &CircuitGraph) -> bool {
    if a.inputs != b.inputs
        || a.outputs != b.outputs
        || a.nodes.len() != b.nodes.len()
        || a.edges.len() != b.edges.len()
    {
        return false;
    }
    let key = |p: Port| match p.anchor {
        Anchor::Boundary => (usize::MAX, p.index),
        Anchor::Node(n) => (n, p.index),
    };
    let mut target: Vec<_> = b
        .edges
        .iter()
        .map(|e| (key(e.source), key(e.target), e.object.clone()))
        .collect();
    target.sort();
    let n = a.nodes.len();
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &CircuitGraph,
        b: &CircuitGraph,
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target: &[EdgeKey],
    ) -> bool {
        if i == a.nodes.len() {
            let map = |p: Port| match p.anchor {
                Anchor::Boundary => (usize::MAX, p.index),
                Anchor::Node(n) => (pi[n], p.index),
            };
            let mut mine: Vec<_> = a
                .edges
                .iter()
                .map(|e| (map(e.source), map(e.target), e.object.clone()))
                .collect();
            mine.sort();
            return mine == target;
        }
        for j in 0..b.nodes.len() {
            if !used[j] && a.nodes[i] == b.nodes[j] {
                used[j] = true;
                pi[i] = j;
                if go(i + 1, a, b, pi, used, target) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    go(0, a, b, &mut pi, &mut used, &target)
}

fn random_set(rng: &mut StdRng, name: &str, max: usize) -> FinSet {
    FinSet::range(name, rng.gen_range(1..=max))
}

fn random_table(rng: &mut StdRng, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

pub fn random_rel_valuation(rng: &mut StdRng, sig: &TeleologicalSignature, max: usize) -> Valuation<FinRelCategory> {
    let mut v = Valuation::new();
    for o in &sig.objects {
        v.objects.insert(o.clone(), random_set(rng, o, max));
    }
    let cat = FinRelCategory;
    for d in &sig.morphisms {
        let dom = teleo::eval::eval_word(&cat, &d.dom, &v).unwrap();
        let cod = teleo::eval::eval_word(&cat, &d.cod, &v).unwrap();
        let matrix = (0..dom.size() * cod.size()).map(|_| rng.gen_bool(0.4)).collect();
        v.morphisms
            .insert(d.name.clone(), FinRel::new(dom, cod, matrix).unwrap());
    }
    v
}

pub fn random_lens_valuation(rng: &mut StdRng, sig: &TeleologicalSignature, max: usize) -> Valuation<FinLensCategory> {
    let mut v = Valuation::new();
    for o in &sig.objects {
        let obj = LensObject::new(random_set(rng, o, max), random_set(rng, &format!("{o}'"), max));
        v.objects.insert(o.clone(), obj);
    }
    let cat = FinLensCategory;
    for d in &sig.morphisms {
        let dom = teleo::eval::eval_word(&cat, &d.dom, &v).unwrap();
        let cod = teleo::eval::eval_word(&cat, &d.cod, &v).unwrap();
        let view = random_table(rng, dom.forward.size(), cod.forward.size());
        let lens = if d.dualisable {
            let g = random_table(rng, cod.backward.size(), dom.backward.size());
            adaptor(&dom, &cod, &view, &g).unwrap()
        } else {
            let update = random_table(rng, dom.forward.size() * cod.backward.size(), dom.backward.size());
            FinLens::new(dom, cod, view, update).unwrap()
        };
        v.morphisms.insert(d.name.clone(), lens);
    }
    v
}

/// Lens objects with every carrier of size at most `n`.
pub fn lens_objects(n: usize) -> Vec<LensObject> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            out.push(LensObject::new(FinSet::range("A", a), FinSet::range("B", b)));
        }
    }
    out
}

/// Counts by label, for comparing node multisets.
pub fn label_counts(g: &CircuitGraph) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for n in &g.nodes {
        *m.entry(n.label.to_string()).or_insert(0) += 1;
    }
    m
}

pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    all_functions(n, m)
}
