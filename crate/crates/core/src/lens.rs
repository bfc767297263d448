//! Lenses between pairs of nonempty finite sets, tabulated.
//!
//! A lens `(X, S) → (Y, R)` has a view `X → Y` and an update `X × R → S`.
//! Tables are dense: `view[x]` and `update[x·|R| + r]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::TeleologicalCategory;
use crate::finset::{all_functions, FinSet};

/// `(X, S)`: a forward and a backward carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LensObject {
    pub forward: FinSet,
    pub backward: FinSet,
}

impl LensObject {
    pub fn new(forward: FinSet, backward: FinSet) -> Self {
        LensObject { forward, backward }
    }

    pub fn unit() -> Self {
        LensObject::new(FinSet::unit(), FinSet::unit())
    }

    pub fn tensor(&self, other: &LensObject) -> LensObject {
        LensObject::new(
            self.forward.product(&other.forward),
            self.backward.product(&other.backward),
        )
    }

    /// `(X, S)* = (S, X)`.
    pub fn dual(&self) -> LensObject {
        LensObject::new(self.backward.clone(), self.forward.clone())
    }
}

impl fmt::Display for LensObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.forward.name(), self.backward.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinLens {
    pub dom: LensObject,
    pub cod: LensObject,
    pub view: Vec<usize>,
    pub update: Vec<usize>,
}

impl FinLens {
    /// Builds a lens after checking table sizes and ranges.
    pub fn new(dom: LensObject, cod: LensObject, view: Vec<usize>, update: Vec<usize>) -> Result<FinLens> {
        let (nx, ns) = (dom.forward.size(), dom.backward.size());
        let (ny, nr) = (cod.forward.size(), cod.backward.size());
        if view.len() != nx || view.iter().any(|&y| y >= ny) {
            return Err(Error::InvalidTable("view is not a total function X → Y".into()));
        }
        if update.len() != nx * nr || update.iter().any(|&s| s >= ns) {
            return Err(Error::InvalidTable("update is not a total function X × R → S".into()));
        }
        Ok(FinLens { dom, cod, view, update })
    }

    pub fn view_at(&self, x: usize) -> usize {
        self.view[x]
    }

    pub fn update_at(&self, x: usize, r: usize) -> usize {
        self.update[x * self.cod.backward.size() + r]
    }
}

pub fn lens_id(o: &LensObject) -> FinLens {
    let (nx, ns) = (o.forward.size(), o.backward.size());
    FinLens {
        dom: o.clone(),
        cod: o.clone(),
        view: (0..nx).collect(),
        update: (0..nx).flat_map(|_| 0..ns).collect(),
    }
}

/// `λ` then `μ`: view `v_μ ∘ v_λ`, update `u_λ(x, u_μ(v_λ(x), q))`.
pub fn lens_compose(l: &FinLens, m: &FinLens) -> Result<FinLens> {
    if l.cod != m.dom {
        return Err(Error::BoundaryMismatch(format!("{} vs {}", l.cod, m.dom)));
    }
    let nx = l.dom.forward.size();
    let nq = m.cod.backward.size();
    let view = (0..nx).map(|x| m.view_at(l.view_at(x))).collect();
    let update = (0..nx)
        .flat_map(|x| (0..nq).map(move |q| (x, q)))
        .map(|(x, q)| l.update_at(x, m.update_at(l.view_at(x), q)))
        .collect();
    Ok(FinLens {
        dom: l.dom.clone(),
        cod: m.cod.clone(),
        view,
        update,
    })
}

pub fn lens_tensor(l: &FinLens, m: &FinLens) -> FinLens {
    let (nx, nx2) = (l.dom.forward.size(), m.dom.forward.size());
    let (nr, nr2) = (l.cod.backward.size(), m.cod.backward.size());
    let (ny2, ns2) = (m.cod.forward.size(), m.dom.backward.size());
    let mut view = Vec::with_capacity(nx * nx2);
    let mut update = Vec::with_capacity(nx * nx2 * nr * nr2);
    for x in 0..nx {
        for x2 in 0..nx2 {
            view.push(l.view_at(x) * ny2 + m.view_at(x2));
            for r in 0..nr {
                for r2 in 0..nr2 {
                    update.push(l.update_at(x, r) * ns2 + m.update_at(x2, r2));
                }
            }
        }
    }
    FinLens {
        dom: l.dom.tensor(&m.dom),
        cod: l.cod.tensor(&m.cod),
        view,
        update,
    }
}

/// The adaptor `(f, g)`: view `f : X → Y`, update `(x, r) ↦ g(r)` for
/// `g : R → S`.
pub fn adaptor(dom: &LensObject, cod: &LensObject, f: &[usize], g: &[usize]) -> Result<FinLens> {
    let nx = dom.forward.size();
    FinLens::new(
        dom.clone(),
        cod.clone(),
        f.to_vec(),
        (0..nx).flat_map(|_| g.iter().copied()).collect(),
    )
}

pub fn is_adaptor(l: &FinLens) -> bool {
    let nr = l.cod.backward.size();
    (0..l.dom.forward.size()).all(|x| (0..nr).all(|r| l.update_at(x, r) == l.update_at(0, r)))
}

/// `(f, g)* = (g, f)`, defined on adaptors only.
pub fn lens_dual(l: &FinLens) -> Result<FinLens> {
    if !is_adaptor(l) {
        return Err(Error::NotAnAdaptor(format!("{} → {}", l.dom, l.cod)));
    }
    let nr = l.cod.backward.size();
    let g: Vec<usize> = (0..nr).map(|r| l.update_at(0, r)).collect();
    adaptor(&l.cod.dual(), &l.dom.dual(), &g, &l.view)
}

/// `ε : (X × S, S × X) → (1, 1)` with update `((x, s), *) ↦ (s, x)`.
pub fn lens_counit(o: &LensObject) -> FinLens {
    let (nx, ns) = (o.forward.size(), o.backward.size());
    let mut update = Vec::with_capacity(nx * ns);
    for x in 0..nx {
        for s in 0..ns {
            update.push(s * nx + x);
        }
    }
    FinLens {
        dom: o.tensor(&o.dual()),
        cod: LensObject::unit(),
        view: vec![0; nx * ns],
        update,
    }
}

/// `σ : A ⊗ B → B ⊗ A`.
pub fn lens_symmetry(a: &LensObject, b: &LensObject) -> FinLens {
    let (xa, xb) = (a.forward.size(), b.forward.size());
    let (sa, sb) = (a.backward.size(), b.backward.size());
    let mut view = Vec::with_capacity(xa * xb);
    let mut update = Vec::with_capacity(xa * xb * sa * sb);
    for i in 0..xa {
        for j in 0..xb {
            view.push(j * xa + i);
            for rb in 0..sb {
                for ra in 0..sa {
                    update.push(ra * sb + rb);
                }
            }
        }
    }
    FinLens {
        dom: a.tensor(b),
        cod: b.tensor(a),
        view,
        update,
    }
}

pub fn lens_eq(l: &FinLens, m: &FinLens) -> Result<bool> {
    if l.dom != m.dom || l.cod != m.cod {
        return Err(Error::BoundaryMismatch(format!(
            "{} → {} vs {} → {}",
            l.dom, l.cod, m.dom, m.cod
        )));
    }
    Ok(l.view == m.view && l.update == m.update)
}

/// Every lens between two objects.
pub fn all_lenses(dom: &LensObject, cod: &LensObject) -> Vec<FinLens> {
    let (nx, ns) = (dom.forward.size(), dom.backward.size());
    let (ny, nr) = (cod.forward.size(), cod.backward.size());
    let mut out = Vec::new();
    for v in all_functions(nx, ny) {
        for u in all_functions(nx * nr, ns) {
            out.push(FinLens {
                dom: dom.clone(),
                cod: cod.clone(),
                view: v.clone(),
                update: u,
            });
        }
    }
    out
}

/// Every adaptor between two objects.
pub fn all_adaptors(dom: &LensObject, cod: &LensObject) -> Vec<FinLens> {
    let (nx, ns) = (dom.forward.size(), dom.backward.size());
    let (ny, nr) = (cod.forward.size(), cod.backward.size());
    let mut out = Vec::new();
    for f in all_functions(nx, ny) {
        for g in all_functions(nr, ns) {
            out.push(adaptor(dom, cod, &f, &g).expect("tables in range"));
        }
    }
    out
}

/// The lens instance.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinLensCategory;

impl TeleologicalCategory for FinLensCategory {
    type Object = LensObject;
    type Morphism = FinLens;

    fn unit(&self) -> LensObject {
        LensObject::unit()
    }

    fn tensor_objects(&self, a: &LensObject, b: &LensObject) -> LensObject {
        a.tensor(b)
    }

    fn dual_object(&self, a: &LensObject) -> LensObject {
        a.dual()
    }

    fn dom(&self, f: &FinLens) -> LensObject {
        f.dom.clone()
    }

    fn cod(&self, f: &FinLens) -> LensObject {
        f.cod.clone()
    }

    fn identity(&self, a: &LensObject) -> FinLens {
        lens_id(a)
    }

    fn compose(&self, f: &FinLens, g: &FinLens) -> Result<FinLens> {
        lens_compose(f, g)
    }

    fn tensor(&self, f: &FinLens, g: &FinLens) -> FinLens {
        lens_tensor(f, g)
    }

    fn symmetry(&self, a: &LensObject, b: &LensObject) -> FinLens {
        lens_symmetry(a, b)
    }

    fn counit(&self, a: &LensObject) -> FinLens {
        lens_counit(a)
    }

    fn dual(&self, f: &FinLens) -> Option<FinLens> {
        lens_dual(f).ok()
    }

    fn morphism_eq(&self, f: &FinLens, g: &FinLens) -> bool {
        lens_eq(f, g).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, n: usize) -> FinSet {
        FinSet::range(name, n)
    }

    fn first_coordinate_lens() -> FinLens {
        // (Z × Z, B × Z) → (Z, B) with Z = {0,1}, B = {t,f}
        let z = set("Z", 2);
        let b = FinSet::from_strs("B", &["t", "f"]).unwrap();
        let dom = LensObject::new(z.product(&z), b.product(&z));
        let cod = LensObject::new(z.clone(), b);
        let view = (0..4).map(|zz| zz / 2).collect();
        let mut update = Vec::new();
        for zz in 0..4 {
            for bb in 0..2 {
                update.push(bb * 2 + zz % 2);
            }
        }
        FinLens::new(dom, cod, view, update).unwrap()
    }

    #[test]
    fn identity_on_singletons() {
        let o = LensObject::new(
            FinSet::from_strs("A", &["a"]).unwrap(),
            FinSet::from_strs("B", &["b"]).unwrap(),
        );
        let id = lens_id(&o);
        assert_eq!(id.view, vec![0]);
        assert_eq!(id.update, vec![0]);
        assert!(is_adaptor(&id));
    }

    #[test]
    fn first_coordinate_lens_is_not_an_adaptor() {
        let l = first_coordinate_lens();
        assert!(!is_adaptor(&l));
        assert_eq!(lens_compose(&l, &lens_id(&l.cod)).unwrap(), l);
        assert_eq!(lens_compose(&lens_id(&l.dom), &l).unwrap(), l);
    }

    #[test]
    fn counit_is_not_an_adaptor_on_two_points() {
        let o = LensObject::new(set("X", 2), set("S", 2));
        let e = lens_counit(&o);
        assert!(!is_adaptor(&e));
        assert!(matches!(lens_dual(&e), Err(Error::NotAnAdaptor(_))));
        let trivial = lens_counit(&LensObject::unit());
        assert_eq!(trivial, lens_id(&LensObject::unit()));
    }

    #[test]
    fn adaptor_duals() {
        let a = LensObject::new(set("X", 2), set("S", 3));
        let b = LensObject::new(set("Y", 3), set("R", 2));
        let f = vec![2, 0];
        let g = vec![1, 2];
        let l = adaptor(&a, &b, &f, &g).unwrap();
        assert!(is_adaptor(&l));
        assert_eq!(lens_dual(&l).unwrap(), adaptor(&b.dual(), &a.dual(), &g, &f).unwrap());
        assert_eq!(lens_dual(&lens_dual(&l).unwrap()).unwrap(), l);
        assert_eq!(adaptor(&a, &a, &[0, 1], &[0, 1, 2]).unwrap(), lens_id(&a));
    }

    #[test]
    fn equality_needs_matching_types() {
        let o = LensObject::new(set("X", 2), set("S", 2));
        let id = lens_id(&o);
        let mut swapped = id.clone();
        swapped.update = vec![1, 0, 1, 0];
        assert!(!lens_eq(&id, &swapped).unwrap());
        assert!(lens_eq(&id, &id).unwrap());
        assert!(lens_eq(&id, &lens_id(&LensObject::unit())).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let a = LensObject::new(set("X", 2), set("S", 2));
        let b = LensObject::new(set("Y", 2), FinSet::unit());
        assert_eq!(all_lenses(&a, &b).len(), 4 * 4);
        assert_eq!(all_adaptors(&a, &b).len(), 4 * 2);
    }
}
