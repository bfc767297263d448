//! Check the instance axioms on every small relation and adaptor, and the
//! lifting of lenses into games.

use teleo::eval::{check_axioms, check_functor};
use teleo::finset::FinSet;
use teleo::game::{lift_lens, FinGameCategory, LiftLens};
use teleo::lens::{all_adaptors, FinLensCategory, LensObject};
use teleo::rel::{all_relations, FinRelCategory};

fn main() {
    let sets: Vec<FinSet> = (1..=2).map(|n| FinSet::range("S", n)).collect();
    let rels: Vec<_> = sets
        .iter()
        .flat_map(|a| sets.iter().flat_map(|b| all_relations(a, b)))
        .collect();
    let r = check_axioms(&FinRelCategory, &sets, &rels);
    println!("rel:  {} checks, {} failures", r.checked, r.failures.len());

    let objs: Vec<LensObject> = sets
        .iter()
        .flat_map(|a| sets.iter().map(|b| LensObject::new(a.clone(), b.clone())))
        .collect();
    let adaptors: Vec<_> = objs
        .iter()
        .flat_map(|a| objs.iter().flat_map(|b| all_adaptors(a, b)))
        .collect();
    let r = check_axioms(&FinLensCategory, &objs, &adaptors);
    println!("lens: {} checks, {} failures", r.checked, r.failures.len());

    let games: Vec<_> = adaptors.iter().map(lift_lens).collect();
    let r = check_axioms(&FinGameCategory, &objs, &games);
    println!("game: {} checks, {} failures", r.checked, r.failures.len());

    let sample: Vec<_> = adaptors.iter().step_by(4).cloned().collect();
    let r = check_functor(&FinLensCategory, &FinGameCategory, &LiftLens, &objs, &sample, &sample);
    println!("lift: {} checks, {} failures", r.checked, r.failures.len());
}
