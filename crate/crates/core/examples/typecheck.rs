//! Parse a few terms against a small signature and print their types.

use teleo::signature::{MorphismDecl, TeleologicalSignature, Word};
use teleo::term::{parse_term, typecheck};

fn main() -> teleo::Result<()> {
    let sig = TeleologicalSignature::new()
        .with_object("x")
        .with_object("y")
        .with_morphism(MorphismDecl::new("f", Word::parse("x")?, Word::parse("y")?, true))
        .with_morphism(MorphismDecl::new("k", Word::parse("y")?, Word::parse("y")?, false));

    for text in [
        "f ; k",
        "f | id(y*)",
        "(f | id(y*)) ; cup(y)",
        "(id(x) | f^) ; cup(x)",
        "k^",
        "f ; f",
    ] {
        let term = parse_term(text)?;
        match typecheck(&term, &sig) {
            Ok(t) => println!("{text:<24} : {} → {}", t.dom, t.cod),
            Err(e) => println!("{text:<24} ! {e}"),
        }
    }
    Ok(())
}
