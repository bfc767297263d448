//! Elaborate a term with a cap into a circuit graph and print it as DOT.
//!
//! `cargo run --example render | dot -Tsvg > cap.svg`

use teleo::graph::{elaborate, render_dot, validate_graph};
use teleo::signature::{MorphismDecl, TeleologicalSignature, Word};
use teleo::term::{parse_term, typecheck};

fn main() -> teleo::Result<()> {
    let sig = TeleologicalSignature::new()
        .with_object("x")
        .with_object("y")
        .with_morphism(MorphismDecl::new("f", Word::parse("x")?, Word::parse("y")?, true));
    let t = typecheck(&parse_term("(f | id(y*)) ; cup(y)")?, &sig)?;
    let g = elaborate(&t);
    validate_graph(&g).expect("elaborated graphs are well formed");
    eprintln!("{} nodes, {} edges", g.nodes.len(), g.edges.len());
    print!("{}", render_dot(&g));
    Ok(())
}
