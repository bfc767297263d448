//! Nonempty finite sets as strict products of named factors.
//!
//! An element of a product is addressed row-major: in `A × B` the pair
//! `(a, b)` has index `a·|B| + b`. Products of products flatten, and any
//! one-element factor is dropped, so every singleton is the unit `1`
//! with element `*`. Tensors built from these sets are strictly associative
//! and unital.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub name: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FinSet {
    factors: Vec<Factor>,
}

impl FinSet {
    /// A set with the given distinct elements. A one-element set is the
    /// unit.
    pub fn new(name: impl Into<String>, elements: Vec<String>) -> Result<FinSet> {
        let name = name.into();
        if elements.is_empty() {
            return Err(Error::InvalidSet(format!("`{name}` is empty")));
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(Error::InvalidSet(format!("`{name}` has repeated elements")));
        }
        if elements.len() == 1 {
            return Ok(FinSet::unit());
        }
        Ok(FinSet {
            factors: vec![Factor { name, elements }],
        })
    }

    pub fn from_strs(name: &str, elements: &[&str]) -> Result<FinSet> {
        FinSet::new(name, elements.iter().map(|s| s.to_string()).collect())
    }

    /// `{0, …, n-1}`. Panics when `n` is zero.
    pub fn range(name: &str, n: usize) -> FinSet {
        FinSet::new(name, (0..n).map(|i| i.to_string()).collect()).expect("nonempty range")
    }

    pub fn unit() -> FinSet {
        FinSet { factors: Vec::new() }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.factors.iter().map(|f| f.elements.len()).product()
    }

    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FinSet { factors }
    }

    pub fn name(&self) -> String {
        if self.is_unit() {
            "1".into()
        } else {
            self.factors
                .iter()
                .map(|f| f.name.as_str())
                .collect::<Vec<_>>()
                .join("×")
        }
    }

    /// Per-factor coordinates of element `i`.
    pub fn coordinates(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            out[k] = i % f.elements.len();
            i /= f.elements.len();
        }
        out
    }

    pub fn element(&self, i: usize) -> String {
        match self.factors.len() {
            0 => "*".into(),
            1 => self.factors[0].elements[i].clone(),
            _ => {
                let parts: Vec<&str> = self
                    .coordinates(i)
                    .into_iter()
                    .zip(&self.factors)
                    .map(|(c, f)| f.elements[c].as_str())
                    .collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn elements(&self) -> Vec<String> {
        (0..self.size()).map(|i| self.element(i)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        if self.is_unit() {
            return matches!(name, "*" | "()").then_some(0);
        }
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        (0..self.size()).find(|&i| {
            let e = self.element(i);
            e == name || e.chars().filter(|c| !c.is_whitespace()).collect::<String>() == compact
        })
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.name(), self.elements().join(", "))
    }
}

impl Serialize for FinSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FinSet", 2)?;
        s.serialize_field("name", &self.name())?;
        s.serialize_field("elements", &self.elements())?;
        s.end()
    }
}

/// Every total function `{0..n} → {0..m}` as a table, in lexicographic
/// order of tables.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut t = vec![0usize; n];
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
        }
    }
}

/// The set of function tables `dom → cod`, named by listing images in
/// domain order, e.g. `[a,b]`. Over the unit this is `cod` itself, renamed.
pub fn exponential(name: &str, dom: &FinSet, cod: &FinSet) -> FinSet {
    if dom.is_unit() {
        return FinSet::new(name, cod.elements()).expect("nonempty codomain");
    }
    let tables = all_functions(dom.size(), cod.size());
    let names = tables
        .iter()
        .map(|t| {
            let images: Vec<String> = t.iter().map(|&y| cod.element(y)).collect();
            format!("[{}]", images.join(","))
        })
        .collect();
    FinSet::new(name, names).expect("tables are distinct and nonempty")
}
