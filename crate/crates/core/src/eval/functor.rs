use super::laws::AxiomReport;
use super::TeleologicalCategory;

/// A structure-preserving map between two instances, given on objects and
/// morphisms.
pub trait TeleologicalFunctor<A: TeleologicalCategory, B: TeleologicalCategory> {
    fn map_object(&self, x: &A::Object) -> B::Object;
    fn map_morphism(&self, f: &A::Morphism) -> B::Morphism;
}

pub struct IdentityFunctor;

impl<C: TeleologicalCategory> TeleologicalFunctor<C, C> for IdentityFunctor {
    fn map_object(&self, x: &C::Object) -> C::Object {
        x.clone()
    }

    fn map_morphism(&self, f: &C::Morphism) -> C::Morphism {
        f.clone()
    }
}

/// Checks on the samples that `fun` is a strict symmetric monoidal functor
/// that preserves duals of objects and of the sampled dualisable morphisms,
/// and sends counits to counits.
pub fn check_functor<A, B, F>(
    src: &A,
    dst: &B,
    fun: &F,
    objects: &[A::Object],
    morphisms: &[A::Morphism],
    dualisable: &[A::Morphism],
) -> AxiomReport
where
    A: TeleologicalCategory,
    B: TeleologicalCategory,
    F: TeleologicalFunctor<A, B>,
{
    let mut r = AxiomReport::default();
    let eq = |f: &B::Morphism, g: &B::Morphism| dst.morphism_eq(f, g);
    r.record(fun.map_object(&src.unit()) == dst.unit(), || "F(I) ≠ I".into());

    for x in objects {
        let fx = fun.map_object(x);
        r.record(eq(&fun.map_morphism(&src.identity(x)), &dst.identity(&fx)), || {
            format!("F(id) ≠ id at X = {x}")
        });
        r.record(fun.map_object(&src.dual_object(x)) == dst.dual_object(&fx), || {
            format!("F(X*) ≠ F(X)* at X = {x}")
        });
        r.record(eq(&fun.map_morphism(&src.counit(x)), &dst.counit(&fx)), || {
            format!("F(ε_X) ≠ ε_F(X) at X = {x}")
        });
        for y in objects {
            let fy = fun.map_object(y);
            r.record(
                fun.map_object(&src.tensor_objects(x, y)) == dst.tensor_objects(&fx, &fy),
                || format!("F(X⊗Y) ≠ FX⊗FY at X = {x}, Y = {y}"),
            );
            r.record(
                eq(&fun.map_morphism(&src.symmetry(x, y)), &dst.symmetry(&fx, &fy)),
                || format!("F(σ) ≠ σ at X = {x}, Y = {y}"),
            );
        }
    }

    let images: Vec<B::Morphism> = morphisms.iter().map(|f| fun.map_morphism(f)).collect();
    for (i, f) in morphisms.iter().enumerate() {
        r.record(
            dst.dom(&images[i]) == fun.map_object(&src.dom(f)) && dst.cod(&images[i]) == fun.map_object(&src.cod(f)),
            || "F(f) has the wrong type on a sampled morphism".into(),
        );
        for (j, g) in morphisms.iter().enumerate() {
            let t = fun.map_morphism(&src.tensor(f, g));
            r.record(eq(&t, &dst.tensor(&images[i], &images[j])), || {
                "F(f⊗g) ≠ Ff⊗Fg on a sampled pair".into()
            });
            if src.cod(f) == src.dom(g) {
                let lhs = src.compose(f, g).ok().map(|fg| fun.map_morphism(&fg));
                let rhs = dst.compose(&images[i], &images[j]).ok();
                let ok = matches!((&lhs, &rhs), (Some(a), Some(b)) if eq(a, b));
                r.record(ok, || "F(f;g) ≠ Ff;Fg on a sampled pair".into());
            }
        }
    }

    for f in dualisable {
        let lhs = src.dual(f).map(|fs| fun.map_morphism(&fs));
        let rhs = dst.dual(&fun.map_morphism(f));
        let ok = matches!((&lhs, &rhs), (Some(a), Some(b)) if eq(a, b));
        r.record(ok, || "F(f*) ≠ F(f)* on a sampled dualisable morphism".into());
    }
    r
}
