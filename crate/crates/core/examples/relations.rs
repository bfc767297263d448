//! Evaluate diagrams in finite sets and relations.

use teleo::eval::{evaluate, Valuation};
use teleo::finset::FinSet;
use teleo::graph::elaborate;
use teleo::io::rel_to_text;
use teleo::rel::{FinRel, FinRelCategory};
use teleo::signature::{MorphismDecl, TeleologicalSignature, Word};
use teleo::term::{parse_term, typecheck};

fn main() -> teleo::Result<()> {
    let sig = TeleologicalSignature::new()
        .with_object("x")
        .with_object("y")
        .with_morphism(MorphismDecl::new("f", Word::parse("x")?, Word::parse("y")?, true));
    let x = FinSet::from_strs("X", &["0", "1"])?;
    let y = FinSet::from_strs("Y", &["a", "b", "c"])?;
    let f = FinRel::from_pairs(x.clone(), y.clone(), &[(0, 0), (0, 2), (1, 1)]);
    let val = Valuation::new()
        .with_object("x", x)
        .with_object("y", y)
        .with_morphism("f", f);
    val.check(&FinRelCategory, &sig)?;

    for text in ["cup(x)", "f^", "(f | id(y*)) ; cup(y)", "(id(x) | f^) ; cup(x)"] {
        let g = elaborate(&typecheck(&parse_term(text)?, &sig)?);
        let r = evaluate(&FinRelCategory, &g, &val)?;
        println!("{text}\n{}", rel_to_text(&r));
    }
    Ok(())
}
