use std::fmt::Write;

use super::{Anchor, CircuitGraph, Port};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn record(name: &str, prefix: &str, letters: impl Iterator<Item = String>) -> String {
    let fields: Vec<String> = letters
        .enumerate()
        .map(|(i, l)| format!("<{prefix}{i}> {}", escape(&l)))
        .collect();
    let body = if fields.is_empty() {
        "I".to_string()
    } else {
        fields.join(" | ")
    };
    format!("  {name} [shape=record, label=\"{{{body}}}\"];\n")
}

/// Renders a circuit graph as DOT, left to right. The two boundaries are
/// record nodes whose fields are the ports in order.
pub fn render_dot(g: &CircuitGraph) -> String {
    let mut out = String::from("digraph circuit {\n  rankdir=LR;\n  node [fontname=\"monospace\"];\n");
    out.push_str(&record("inputs", "i", g.inputs.iter().map(|l| l.to_string())));
    out.push_str(&record("outputs", "o", g.outputs.iter().map(|l| l.to_string())));
    for (i, n) in g.nodes.iter().enumerate() {
        let shape = if n.label.is_counit() { "invhouse" } else { "box" };
        let _ = writeln!(
            out,
            "  n{i} [shape={shape}, label=\"{}\\nparity {}\"];",
            escape(&n.label.to_string()),
            n.parity()
        );
    }
    let end = |p: Port, boundary: &str, prefix: &str| match p.anchor {
        Anchor::Boundary => format!("{boundary}:{prefix}{}", p.index),
        Anchor::Node(n) => format!("n{n}"),
    };
    for e in &g.edges {
        let mut attrs = format!("label=\"{}\"", escape(&e.object.to_string()));
        if let Anchor::Node(_) = e.source.anchor {
            let _ = write!(attrs, ", taillabel=\"{}\"", e.source.index);
        }
        if let Anchor::Node(_) = e.target.anchor {
            let _ = write!(attrs, ", headlabel=\"{}\"", e.target.index);
        }
        if e.object.starred {
            attrs.push_str(", style=dashed");
        }
        let _ = writeln!(
            out,
            "  {} -> {} [{attrs}];",
            end(e.source, "inputs", "i"),
            end(e.target, "outputs", "o")
        );
    }
    out.push_str("}\n");
    out
}
