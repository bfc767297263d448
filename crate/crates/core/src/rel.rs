//! Relations between finite sets, as boolean matrices. Every relation is
//! dualisable (its converse) and every object is its own dual.

use crate::error::{Error, Result};
use crate::eval::TeleologicalCategory;
use crate::finset::FinSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinRel {
    pub dom: FinSet,
    pub cod: FinSet,
    /// `matrix[a·|cod| + b]` holds iff `a` is related to `b`.
    pub matrix: Vec<bool>,
}

impl FinRel {
    pub fn new(dom: FinSet, cod: FinSet, matrix: Vec<bool>) -> Result<FinRel> {
        if matrix.len() != dom.size() * cod.size() {
            return Err(Error::InvalidTable(format!(
                "relation {} → {} needs {} entries, got {}",
                dom.name(),
                cod.name(),
                dom.size() * cod.size(),
                matrix.len()
            )));
        }
        Ok(FinRel { dom, cod, matrix })
    }

    pub fn from_pairs(dom: FinSet, cod: FinSet, pairs: &[(usize, usize)]) -> FinRel {
        let mut matrix = vec![false; dom.size() * cod.size()];
        for &(a, b) in pairs {
            matrix[a * cod.size() + b] = true;
        }
        FinRel { dom, cod, matrix }
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.cod.size() + b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let nb = self.cod.size();
        (0..self.dom.size())
            .flat_map(|a| (0..nb).map(move |b| (a, b)))
            .filter(|&(a, b)| self.holds(a, b))
            .collect()
    }
}

pub fn rel_id(x: &FinSet) -> FinRel {
    let n = x.size();
    FinRel::from_pairs(x.clone(), x.clone(), &(0..n).map(|i| (i, i)).collect::<Vec<_>>())
}

pub fn rel_compose(r: &FinRel, s: &FinRel) -> Result<FinRel> {
    if r.cod != s.dom {
        return Err(Error::BoundaryMismatch(format!("{} vs {}", r.cod.name(), s.dom.name())));
    }
    let (na, nb, nc) = (r.dom.size(), r.cod.size(), s.cod.size());
    let mut matrix = vec![false; na * nc];
    for a in 0..na {
        for b in 0..nb {
            if r.holds(a, b) {
                for c in 0..nc {
                    matrix[a * nc + c] |= s.holds(b, c);
                }
            }
        }
    }
    Ok(FinRel {
        dom: r.dom.clone(),
        cod: s.cod.clone(),
        matrix,
    })
}

pub fn rel_tensor(r: &FinRel, s: &FinRel) -> FinRel {
    let (na, na2) = (r.dom.size(), s.dom.size());
    let (nb, nb2) = (r.cod.size(), s.cod.size());
    let mut matrix = Vec::with_capacity(na * na2 * nb * nb2);
    for a in 0..na {
        for a2 in 0..na2 {
            for b in 0..nb {
                for b2 in 0..nb2 {
                    matrix.push(r.holds(a, b) && s.holds(a2, b2));
                }
            }
        }
    }
    FinRel {
        dom: r.dom.product(&s.dom),
        cod: r.cod.product(&s.cod),
        matrix,
    }
}

/// `σ : A × B → B × A`.
pub fn rel_sym(a: &FinSet, b: &FinSet) -> FinRel {
    let (na, nb) = (a.size(), b.size());
    let pairs: Vec<(usize, usize)> = (0..na)
        .flat_map(|i| (0..nb).map(move |j| (i * nb + j, j * na + i)))
        .collect();
    FinRel::from_pairs(a.product(b), b.product(a), &pairs)
}

/// The converse relation.
pub fn rel_dual(r: &FinRel) -> FinRel {
    let pairs: Vec<(usize, usize)> = r.pairs().into_iter().map(|(a, b)| (b, a)).collect();
    FinRel::from_pairs(r.cod.clone(), r.dom.clone(), &pairs)
}

/// `X × X → 1`, holding exactly on the diagonal.
pub fn rel_counit(x: &FinSet) -> FinRel {
    let n = x.size();
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i * n + i, 0)).collect();
    FinRel::from_pairs(x.product(x), FinSet::unit(), &pairs)
}

/// Every relation between two sets.
pub fn all_relations(a: &FinSet, b: &FinSet) -> Vec<FinRel> {
    let n = a.size() * b.size();
    assert!(n < 24, "too many relations to enumerate");
    (0u32..(1u32 << n))
        .map(|mask| FinRel {
            dom: a.clone(),
            cod: b.clone(),
            matrix: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        })
        .collect()
}

/// The relation instance.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinRelCategory;

impl TeleologicalCategory for FinRelCategory {
    type Object = FinSet;
    type Morphism = FinRel;

    fn unit(&self) -> FinSet {
        FinSet::unit()
    }

    fn tensor_objects(&self, a: &FinSet, b: &FinSet) -> FinSet {
        a.product(b)
    }

    fn dual_object(&self, a: &FinSet) -> FinSet {
        a.clone()
    }

    fn dom(&self, f: &FinRel) -> FinSet {
        f.dom.clone()
    }

    fn cod(&self, f: &FinRel) -> FinSet {
        f.cod.clone()
    }

    fn identity(&self, a: &FinSet) -> FinRel {
        rel_id(a)
    }

    fn compose(&self, f: &FinRel, g: &FinRel) -> Result<FinRel> {
        rel_compose(f, g)
    }

    fn tensor(&self, f: &FinRel, g: &FinRel) -> FinRel {
        rel_tensor(f, g)
    }

    fn symmetry(&self, a: &FinSet, b: &FinSet) -> FinRel {
        rel_sym(a, b)
    }

    fn counit(&self, a: &FinSet) -> FinRel {
        rel_counit(a)
    }

    fn dual(&self, f: &FinRel) -> Option<FinRel> {
        Some(rel_dual(f))
    }

    fn morphism_eq(&self, f: &FinRel, g: &FinRel) -> bool {
        f == g
    }
}
