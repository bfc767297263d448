//! Sliding a dualisable box around a cap: the two sides are not isomorphic
//! circuits but are teleologically equal, with the box as the reflected part.

use teleo::equiv::{circuit_iso, teleo_witness};
use teleo::graph::{elaborate, CircuitGraph};
use teleo::signature::{MorphismDecl, TeleologicalSignature, Word};
use teleo::term::{parse_term, typecheck};

fn graph(text: &str, sig: &TeleologicalSignature) -> teleo::Result<CircuitGraph> {
    Ok(elaborate(&typecheck(&parse_term(text)?, sig)?))
}

fn main() -> teleo::Result<()> {
    let (x, y) = (Word::parse("x")?, Word::parse("y")?);
    let sig = TeleologicalSignature::new()
        .with_object("x")
        .with_object("y")
        .with_morphism(MorphismDecl::new("f", x.clone(), y.clone(), true))
        .with_morphism(MorphismDecl::new("g", x, y.clone(), false))
        .with_morphism(MorphismDecl::new("h", y.dual(), Word::parse("x*")?, false));

    for (l, r) in [
        ("(f | id(y*)) ; cup(y)", "(id(x) | f^) ; cup(x)"),
        ("(g | id(y*)) ; cup(y)", "(id(x) | h) ; cup(x)"),
    ] {
        let (a, b) = (graph(l, &sig)?, graph(r, &sig)?);
        let verdict = match teleo_witness(&a, &b) {
            Some(w) => {
                let names: Vec<String> = w.nodes.iter().map(|&n| a.nodes[n].label.to_string()).collect();
                format!("equal, reflecting {{{}}}", names.join(", "))
            }
            None => "different".to_string(),
        };
        println!("{l}  vs  {r}");
        println!("  circuits isomorphic: {}", circuit_iso(&a, &b));
        println!("  teleologically: {verdict}");
    }
    Ok(())
}
