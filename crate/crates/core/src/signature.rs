//! Teleological signatures, words over signed object symbols, and the
//! expansion of a teleological signature into a plain monoidal signature.
//!
//! A letter is an object symbol together with a star flag. The star is a
//! representation bit rather than a separate symbol, so `x**` is `x`
//! structurally. Duals of words flip every star and keep the letter order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An object symbol, possibly starred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedObject {
    pub symbol: String,
    pub starred: bool,
}

impl SignedObject {
    pub fn plain(symbol: impl Into<String>) -> Self {
        SignedObject {
            symbol: symbol.into(),
            starred: false,
        }
    }

    pub fn starred(symbol: impl Into<String>) -> Self {
        SignedObject {
            symbol: symbol.into(),
            starred: true,
        }
    }

    pub fn dual(&self) -> Self {
        SignedObject {
            symbol: self.symbol.clone(),
            starred: !self.starred,
        }
    }
}

impl fmt::Display for SignedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.symbol)
        } else {
            f.write_str(&self.symbol)
        }
    }
}

impl FromStr for SignedObject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (symbol, starred) = match s.strip_suffix('*') {
            Some(rest) => (rest.trim_end(), true),
            None => (s, false),
        };
        if !is_identifier(symbol) {
            return Err(Error::UnknownSymbol(s.to_string()));
        }
        Ok(SignedObject {
            symbol: symbol.to_string(),
            starred,
        })
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// An ordered list of letters; the empty word is the monoidal unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<SignedObject>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<SignedObject>) -> Self {
        Word(letters)
    }

    /// Parses a comma separated list such as `x, y*`. An empty string or `I`
    /// is the unit.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "I" {
            return Ok(Word::unit());
        }
        s.split(',').map(str::parse).collect::<Result<_>>().map(Word)
    }

    pub fn letters(&self) -> &[SignedObject] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignedObject> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn dual(&self) -> Word {
        word_dual(self)
    }
}

impl From<Vec<SignedObject>> for Word {
    fn from(letters: Vec<SignedObject>) -> Self {
        Word(letters)
    }
}

impl FromIterator<SignedObject> for Word {
    fn from_iter<T: IntoIterator<Item = SignedObject>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a SignedObject;
    type IntoIter = std::slice::Iter<'a, SignedObject>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for Word {
    type Output = SignedObject;

    fn index(&self, i: usize) -> &SignedObject {
        &self.0[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| s.parse::<SignedObject>())
            .collect::<Result<Vec<_>>>()
            .map(Word)
            .map_err(serde::de::Error::custom)
    }
}

/// Letterwise star flip. The order of letters is preserved.
pub fn word_dual(w: &Word) -> Word {
    w.iter().map(SignedObject::dual).collect()
}

/// A morphism symbol declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: Word,
    pub cod: Word,
    #[serde(default)]
    pub dualisable: bool,
}

impl MorphismDecl {
    pub fn new(name: impl Into<String>, dom: Word, cod: Word, dualisable: bool) -> Self {
        MorphismDecl {
            name: name.into(),
            dom,
            cod,
            dualisable,
        }
    }
}

/// Object symbols plus morphism symbols, some of them flagged dualisable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeleologicalSignature {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDecl>,
}

impl TeleologicalSignature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_object(mut self, name: impl Into<String>) -> Self {
        self.objects.push(name.into());
        self
    }

    pub fn with_morphism(mut self, decl: MorphismDecl) -> Self {
        self.morphisms.push(decl);
        self
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDecl> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    /// The dualisable morphism symbols.
    pub fn dualisable(&self) -> impl Iterator<Item = &MorphismDecl> {
        self.morphisms.iter().filter(|m| m.dualisable)
    }

    /// Checks name uniqueness and that every letter of every type is declared.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for o in &self.objects {
            if !is_identifier(o) {
                return Err(Error::UnknownSymbol(o.clone()));
            }
            if !seen.insert(o.as_str()) {
                return Err(Error::DuplicateName(o.clone()));
            }
        }
        let mut names = BTreeSet::new();
        for m in &self.morphisms {
            if !names.insert(m.name.as_str()) {
                return Err(Error::DuplicateName(m.name.clone()));
            }
            for letter in m.dom.iter().chain(m.cod.iter()) {
                if !seen.contains(letter.symbol.as_str()) {
                    return Err(Error::UndeclaredObject(letter.symbol.clone()));
                }
            }
        }
        Ok(())
    }

    /// Checks that every letter of `w` is a declared object symbol.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| !self.has_object(&l.symbol)) {
            Some(l) => Err(Error::UnknownSymbol(l.symbol.clone())),
            None => Ok(()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sig: TeleologicalSignature = serde_json::from_str(text)?;
        sig.validate()?;
        Ok(sig)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("signature serialises")
    }
}

/// Labels of morphism symbols in the expanded monoidal signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// A symbol of the teleological signature.
    Gen(String),
    /// The formal dual `f*` of a dualisable symbol `f`.
    Dual(String),
    /// The counit `ε_x : x ⊗ x* → I` of an object symbol `x`.
    Counit(String),
}

impl Label {
    /// 1 for reflected (dual) symbols, 0 otherwise.
    pub fn parity(&self) -> u8 {
        match self {
            Label::Dual(_) => 1,
            _ => 0,
        }
    }

    /// The underlying symbol name, without star or ε.
    pub fn base(&self) -> &str {
        match self {
            Label::Gen(n) | Label::Dual(n) | Label::Counit(n) => n,
        }
    }

    pub fn is_counit(&self) -> bool {
        matches!(self, Label::Counit(_))
    }

    /// `f` ↔ `f*`; counits are fixed.
    pub fn flipped(&self) -> Label {
        match self {
            Label::Gen(n) => Label::Dual(n.clone()),
            Label::Dual(n) => Label::Gen(n.clone()),
            Label::Counit(n) => Label::Counit(n.clone()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Gen(n) => f.write_str(n),
            Label::Dual(n) => write!(f, "{n}*"),
            Label::Counit(x) => write!(f, "ε_{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalDecl {
    pub label: Label,
    pub dom: Word,
    pub cod: Word,
}

/// A monoidal signature over signed letters: the original symbols, the duals
/// of the dualisable ones, and one counit per object symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalSignature {
    pub objects: BTreeSet<SignedObject>,
    pub morphisms: Vec<MonoidalDecl>,
}

impl MonoidalSignature {
    pub fn get(&self, label: &Label) -> Option<&MonoidalDecl> {
        self.morphisms.iter().find(|m| &m.label == label)
    }
}

pub fn expand_signature(s: &TeleologicalSignature) -> MonoidalSignature {
    let objects = s
        .objects
        .iter()
        .flat_map(|x| [SignedObject::plain(x.clone()), SignedObject::starred(x.clone())])
        .collect();
    let mut morphisms: Vec<MonoidalDecl> = s
        .morphisms
        .iter()
        .map(|m| MonoidalDecl {
            label: Label::Gen(m.name.clone()),
            dom: m.dom.clone(),
            cod: m.cod.clone(),
        })
        .collect();
    morphisms.extend(s.dualisable().map(|m| MonoidalDecl {
        label: Label::Dual(m.name.clone()),
        dom: word_dual(&m.cod),
        cod: word_dual(&m.dom),
    }));
    morphisms.extend(s.objects.iter().map(|x| MonoidalDecl {
        label: Label::Counit(x.clone()),
        dom: Word::new(vec![SignedObject::plain(x.clone()), SignedObject::starred(x.clone())]),
        cod: Word::unit(),
    }));
    MonoidalSignature { objects, morphisms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn unit_is_self_dual() {
        assert_eq!(word_dual(&Word::unit()), Word::unit());
    }

    #[test]
    fn dual_flips_stars_without_reversing() {
        assert_eq!(word_dual(&w("x, x2*, x3")), w("x*, x2, x3*"));
        assert_eq!(word_dual(&word_dual(&w("x, y*"))), w("x, y*"));
    }

    #[test]
    fn double_star_is_structural() {
        let x = SignedObject::plain("x");
        assert_eq!(x.dual().dual(), x);
        assert!("x**".parse::<SignedObject>().is_err());
    }

    #[test]
    fn dual_involution_exhaustive_small_words() {
        let letters = [
            SignedObject::plain("a"),
            SignedObject::starred("a"),
            SignedObject::plain("b"),
            SignedObject::starred("b"),
        ];
        let mut words = vec![Word::unit()];
        let mut frontier = vec![Word::unit()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for base in &frontier {
                for l in &letters {
                    next.push(base.concat(&Word::new(vec![l.clone()])));
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        assert_eq!(words.len(), 1 + 4 + 16 + 64 + 256);
        for v in &words {
            assert_eq!(&word_dual(&word_dual(v)), v);
        }
    }

    fn sig_xy() -> TeleologicalSignature {
        TeleologicalSignature::new()
            .with_object("x")
            .with_object("y")
            .with_morphism(MorphismDecl::new("f", w("x"), w("y"), true))
    }

    #[test]
    fn expansion_adds_duals_and_counits() {
        let m = expand_signature(&sig_xy());
        assert_eq!(m.morphisms.len(), 4);
        let fstar = m.get(&Label::Dual("f".into())).unwrap();
        assert_eq!(fstar.dom, w("y*"));
        assert_eq!(fstar.cod, w("x*"));
        let ex = m.get(&Label::Counit("x".into())).unwrap();
        assert_eq!(ex.dom, w("x, x*"));
        assert_eq!(ex.cod, Word::unit());
        assert!(m.get(&Label::Counit("y".into())).is_some());
        assert_eq!(m.objects.len(), 4);
    }

    #[test]
    fn expansion_of_bare_object() {
        let s = TeleologicalSignature::new().with_object("x");
        let m = expand_signature(&s);
        assert_eq!(m.morphisms.len(), 1);
        assert_eq!(m.morphisms[0].label, Label::Counit("x".into()));
    }

    #[test]
    fn non_dualisable_symbol_has_no_dual() {
        let s = TeleologicalSignature::new()
            .with_object("x")
            .with_object("y")
            .with_morphism(MorphismDecl::new("g", w("x"), w("y"), false));
        let m = expand_signature(&s);
        assert!(m.get(&Label::Gen("g".into())).is_some());
        assert!(m.get(&Label::Dual("g".into())).is_none());
    }

    #[test]
    fn validation_errors_name_the_symbol() {
        assert!(TeleologicalSignature::new().validate().is_ok());
        let dup = sig_xy().with_morphism(MorphismDecl::new("f", w("x"), w("x"), false));
        assert_eq!(dup.validate(), Err(Error::DuplicateName("f".into())));
        let undeclared = TeleologicalSignature::new()
            .with_object("x")
            .with_morphism(MorphismDecl::new("f", w("x"), w("y"), false));
        assert_eq!(undeclared.validate(), Err(Error::UndeclaredObject("y".into())));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"objects":["x","y"],"morphisms":[{"name":"f","dom":["x"],"cod":["y*"],"dualisable":true}]}"#;
        let sig = TeleologicalSignature::from_json(text).unwrap();
        assert_eq!(sig.morphisms[0].cod, w("y*"));
        assert_eq!(TeleologicalSignature::from_json(&sig.to_json()).unwrap(), sig);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((prop_oneof![Just("x"), Just("y"), Just("z")], any::<bool>()), 0..6).prop_map(|ls| {
            ls.into_iter()
                .map(|(s, starred)| SignedObject {
                    symbol: s.to_string(),
                    starred,
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn dual_is_monoidal(v in arb_word(), u in arb_word()) {
            prop_assert_eq!(word_dual(&v.concat(&u)), word_dual(&v).concat(&word_dual(&u)));
        }

        #[test]
        fn expansion_size(nd in 0usize..4, d in 0usize..4) {
            let mut s = TeleologicalSignature::new().with_object("x").with_object("y");
            for i in 0..nd {
                s = s.with_morphism(MorphismDecl::new(format!("g{i}"), w("x"), w("y"), false));
            }
            for i in 0..d {
                s = s.with_morphism(MorphismDecl::new(format!("f{i}"), w("y*"), w("x, y"), true));
            }
            prop_assert_eq!(expand_signature(&s).morphisms.len(), nd + 2 * d + 2);
        }
    }
}
