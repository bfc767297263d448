use serde::Serialize;

use super::TeleologicalCategory;

/// Outcome of a law check: how many instances were compared and a line per
/// failed instance.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn seq<C: TeleologicalCategory>(cat: &C, f: &C::Morphism, g: &C::Morphism) -> Option<C::Morphism> {
    cat.compose(f, g).ok()
}

fn same<C: TeleologicalCategory>(cat: &C, f: Option<C::Morphism>, g: Option<C::Morphism>) -> bool {
    match (f, g) {
        (Some(f), Some(g)) => cat.morphism_eq(&f, &g),
        _ => false,
    }
}

/// Checks the object laws of the dual, the two counit axioms, extranaturality
/// of the counit against each dualisable morphism, and that the dual is an
/// involutive contravariant monoidal functor on the samples.
///
/// The counit axioms are checked in the form
/// `ε_{X*} = σ_{X*,X} ; ε_X` and
/// `ε_{X⊗Y} = (X ⊗ σ_{Y,X*} ⊗ Y*) ; (ε_X ⊗ ε_Y)`.
pub fn check_axioms<C: TeleologicalCategory>(
    cat: &C,
    objects: &[C::Object],
    dualisable: &[C::Morphism],
) -> AxiomReport {
    let mut r = AxiomReport::default();
    let unit = cat.unit();
    r.record(cat.dual_object(&unit) == unit, || "I* ≠ I".into());

    for x in objects {
        let xs = cat.dual_object(x);
        r.record(cat.dual_object(&xs) == *x, || format!("X** ≠ X at X = {x}"));
        let lhs = Some(cat.counit(&xs));
        let rhs = seq(cat, &cat.symmetry(&xs, x), &cat.counit(x));
        r.record(same(cat, lhs, rhs), || format!("counit twist fails at X = {x}"));
    }

    for x in objects {
        for y in objects {
            let (xs, ys) = (cat.dual_object(x), cat.dual_object(y));
            let xy = cat.tensor_objects(x, y);
            r.record(cat.dual_object(&xy) == cat.tensor_objects(&xs, &ys), || {
                format!("(X⊗Y)* ≠ X*⊗Y* at X = {x}, Y = {y}")
            });
            let lhs = Some(cat.counit(&xy));
            let middle = cat.tensor(&cat.tensor(&cat.identity(x), &cat.symmetry(y, &xs)), &cat.identity(&ys));
            let rhs = seq(cat, &middle, &cat.tensor(&cat.counit(x), &cat.counit(y)));
            r.record(same(cat, lhs, rhs), || {
                format!("counit of a tensor fails at X = {x}, Y = {y}")
            });
        }
    }

    let duals: Vec<Option<C::Morphism>> = dualisable.iter().map(|f| cat.dual(f)).collect();
    for (f, fs) in dualisable.iter().zip(&duals) {
        let (x, y) = (cat.dom(f), cat.cod(f));
        let Some(fs) = fs else {
            r.record(false, || format!("dual undefined on a sampled morphism {x} → {y}"));
            continue;
        };
        let lhs = seq(
            cat,
            &cat.tensor(f, &cat.identity(&cat.dual_object(&y))),
            &cat.counit(&y),
        );
        let rhs = seq(cat, &cat.tensor(&cat.identity(&x), fs), &cat.counit(&x));
        r.record(same(cat, lhs, rhs), || {
            format!("extranaturality fails for a morphism {x} → {y}")
        });

        r.record(
            cat.dom(fs) == cat.dual_object(&y) && cat.cod(fs) == cat.dual_object(&x),
            || format!("duality: dual has the wrong type for a morphism {x} → {y}"),
        );
        r.record(same(cat, cat.dual(fs), Some(f.clone())), || {
            format!("duality: f** ≠ f for a morphism {x} → {y}")
        });
    }

    for x in objects {
        r.record(
            same(cat, cat.dual(&cat.identity(x)), Some(cat.identity(&cat.dual_object(x)))),
            || format!("duality: id* ≠ id at X = {x}"),
        );
        for y in objects {
            let sym = cat.symmetry(x, y);
            let expected = cat.symmetry(&cat.dual_object(y), &cat.dual_object(x));
            r.record(same(cat, cat.dual(&sym), Some(expected)), || {
                format!("duality: σ* ≠ σ at X = {x}, Y = {y}")
            });
        }
    }

    for (i, f) in dualisable.iter().enumerate() {
        for (j, g) in dualisable.iter().enumerate() {
            let (Some(fs), Some(gs)) = (&duals[i], &duals[j]) else {
                continue;
            };
            let t = cat.tensor(f, g);
            r.record(same(cat, cat.dual(&t), Some(cat.tensor(fs, gs))), || {
                "duality: (f⊗g)* ≠ f*⊗g* on a sampled pair".into()
            });
            if cat.cod(f) == cat.dom(g) {
                let fg = seq(cat, f, g).and_then(|fg| cat.dual(&fg));
                r.record(same(cat, fg, seq(cat, gs, fs)), || {
                    "duality: (f;g)* ≠ g*;f* on a sampled pair".into()
                });
            }
        }
    }
    r
}
