//! File formats: term files, valuations for each instance, and printing of
//! evaluated morphisms as text or JSON.
//!
//! A term file holds one term per line; blank lines and lines starting with
//! `#` are skipped.
//!
//! A valuation is a JSON object with `objects` and `morphisms` maps keyed by
//! symbol name. Morphism types come from the signature. Per instance:
//!
//! * `rel`: an object is a list of element names; a morphism is
//!   `{"matrix": [[0, 1], ...]}` with one row per domain element, or
//!   `{"pairs": [["a", "b"], ...]}`.
//! * `lens`: an object is `{"forward": [..], "backward": [..]}` (either may
//!   be omitted for the one-element set); a morphism is
//!   `{"view": {"x": "y"}, "update": {"(x,r)": "s"}}`, where `update` may
//!   also be nested as `{"x": {"r": "s"}}`. `view` may be omitted when its
//!   codomain has one element and `update` when its codomain does.
//! * `game`: objects as for lenses; a morphism is a lens (a game with one
//!   strategy) or `{"decision": {"utility": {"r": "n/d"}}}` for a player
//!   `(X, 1) → (Y, R)`. Without `utility` the payoff names are read as
//!   rationals.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::eval::{eval_word, TeleologicalCategory, Valuation};
use crate::finset::FinSet;
use crate::game::{decision, lift_lens, scalar_of, FinGame, FinGameCategory};
use crate::lens::{FinLens, FinLensCategory, LensObject};
use crate::rel::{FinRel, FinRelCategory};
use crate::signature::TeleologicalSignature;
use crate::term::{parse_term, Term};

/// Terms of a term file with their 1-based line numbers. Syntax errors are
/// reported at their line in the file.
pub fn parse_term_file(text: &str) -> Result<Vec<(usize, Term)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let term = parse_term(line).map_err(|e| match e {
            Error::Syntax { column, message, .. } => Error::Syntax {
                line: i + 1,
                column,
                message,
            },
            other => other,
        })?;
        out.push((i + 1, term));
    }
    Ok(out)
}

fn scalar_name(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(Error::Valuation(format!("expected an element name, got {other}"))),
    }
}

fn set(name: &str, v: Option<&Value>) -> Result<FinSet> {
    let Some(v) = v else {
        return Ok(FinSet::unit());
    };
    let items = v
        .as_array()
        .ok_or_else(|| Error::Valuation(format!("`{name}` should be a list of elements")))?;
    let names = items.iter().map(scalar_name).collect::<Result<Vec<_>>>()?;
    FinSet::new(name, names)
}

fn element(s: &FinSet, v: &Value, what: &str) -> Result<usize> {
    let name = scalar_name(v)?;
    s.index_of(&name)
        .ok_or_else(|| Error::Valuation(format!("{what}: `{name}` is not an element of {}", s.name())))
}

fn sections(text: &str) -> Result<(Map<String, Value>, Map<String, Value>)> {
    let v: Value = serde_json::from_str(text)?;
    let mut obj = match v {
        Value::Object(m) => m,
        _ => return Err(Error::Valuation("a valuation is a JSON object".into())),
    };
    let mut take = |key: &str| match obj.remove(key) {
        None => Ok(Map::new()),
        Some(Value::Object(m)) => Ok(m),
        Some(_) => Err(Error::Valuation(format!("`{key}` should be an object"))),
    };
    Ok((take("objects")?, take("morphisms")?))
}

/// Builds each declared morphism from its JSON description and its type.
fn morphisms<C: TeleologicalCategory>(
    cat: &C,
    sig: &TeleologicalSignature,
    mut val: Valuation<C>,
    raw: Map<String, Value>,
    build: impl Fn(&str, &Value, &C::Object, &C::Object) -> Result<C::Morphism>,
) -> Result<Valuation<C>> {
    for key in raw.keys() {
        if sig.morphism(key).is_none() {
            return Err(Error::Valuation(format!("`{key}` is not a morphism of the signature")));
        }
    }
    for decl in &sig.morphisms {
        let v = raw
            .get(&decl.name)
            .ok_or_else(|| Error::UnmappedSymbol(decl.name.clone()))?;
        let dom = eval_word(cat, &decl.dom, &val)?;
        let cod = eval_word(cat, &decl.cod, &val)?;
        let m = build(&decl.name, v, &dom, &cod)?;
        val.morphisms.insert(decl.name.clone(), m);
    }
    val.check(cat, sig)?;
    Ok(val)
}

pub fn load_rel_valuation(text: &str, sig: &TeleologicalSignature) -> Result<Valuation<FinRelCategory>> {
    let (objects, raw) = sections(text)?;
    let mut val = Valuation::new();
    for (k, v) in &objects {
        val.objects.insert(k.clone(), set(k, Some(v))?);
    }
    morphisms(&FinRelCategory, sig, val, raw, |name, v, dom, cod| {
        if let Some(rows) = v.get("matrix") {
            let rows = rows
                .as_array()
                .ok_or_else(|| Error::Valuation(format!("`{name}`: matrix should be a list of rows")))?;
            if rows.len() != dom.size() {
                return Err(Error::Valuation(format!(
                    "`{name}`: matrix needs {} rows, one per element of {}",
                    dom.size(),
                    dom.name()
                )));
            }
            let mut matrix = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == cod.size())
                    .ok_or_else(|| Error::Valuation(format!("`{name}`: each row needs {} entries", cod.size())))?;
                for e in row {
                    matrix.push(match e {
                        Value::Bool(b) => *b,
                        Value::Number(n) if n.as_u64() == Some(0) => false,
                        Value::Number(n) if n.as_u64() == Some(1) => true,
                        other => return Err(Error::Valuation(format!("`{name}`: `{other}` is not 0 or 1"))),
                    });
                }
            }
            FinRel::new(dom.clone(), cod.clone(), matrix)
        } else if let Some(pairs) = v.get("pairs").and_then(Value::as_array) {
            let mut out = Vec::new();
            for p in pairs {
                match p.as_array().map(Vec::as_slice) {
                    Some([a, b]) => out.push((element(dom, a, name)?, element(cod, b, name)?)),
                    _ => return Err(Error::Valuation(format!("`{name}`: a pair is a two-element list"))),
                }
            }
            Ok(FinRel::from_pairs(dom.clone(), cod.clone(), &out))
        } else {
            Err(Error::Valuation(format!("`{name}`: expected `matrix` or `pairs`")))
        }
    })
}

fn lens_objects<C>(objects: &Map<String, Value>, val: &mut Valuation<C>) -> Result<()>
where
    C: TeleologicalCategory<Object = LensObject>,
{
    for (k, v) in objects {
        let o = LensObject::new(set(k, v.get("forward"))?, set(&format!("{k}'"), v.get("backward"))?);
        val.objects.insert(k.clone(), o);
    }
    Ok(())
}

fn lens_from_json(name: &str, v: &Value, dom: &LensObject, cod: &LensObject) -> Result<FinLens> {
    let (x, s) = (&dom.forward, &dom.backward);
    let (y, r) = (&cod.forward, &cod.backward);
    let view = match v.get("view") {
        Some(m) => (0..x.size())
            .map(|i| {
                let e = m
                    .get(x.element(i))
                    .ok_or_else(|| Error::Valuation(format!("`{name}`: view misses `{}`", x.element(i))))?;
                element(y, e, name)
            })
            .collect::<Result<Vec<_>>>()?,
        None if y.is_unit() => vec![0; x.size()],
        None => return Err(Error::Valuation(format!("`{name}`: missing `view`"))),
    };
    let update = match v.get("update") {
        Some(m) => {
            let mut out = Vec::new();
            for i in 0..x.size() {
                for j in 0..r.size() {
                    let nested = m.get(x.element(i)).and_then(|row| row.get(r.element(j)));
                    let flat = || m.get(format!("({},{})", x.element(i), r.element(j)));
                    let e = nested.or_else(flat).ok_or_else(|| {
                        Error::Valuation(format!(
                            "`{name}`: update misses `{}` at `{}`",
                            x.element(i),
                            r.element(j)
                        ))
                    })?;
                    out.push(element(s, e, name)?);
                }
            }
            out
        }
        None if s.is_unit() => vec![0; x.size() * r.size()],
        None => return Err(Error::Valuation(format!("`{name}`: missing `update`"))),
    };
    FinLens::new(dom.clone(), cod.clone(), view, update)
}

pub fn load_lens_valuation(text: &str, sig: &TeleologicalSignature) -> Result<Valuation<FinLensCategory>> {
    let (objects, raw) = sections(text)?;
    let mut val = Valuation::new();
    lens_objects(&objects, &mut val)?;
    morphisms(&FinLensCategory, sig, val, raw, lens_from_json)
}

pub fn load_game_valuation(text: &str, sig: &TeleologicalSignature) -> Result<Valuation<FinGameCategory>> {
    let (objects, raw) = sections(text)?;
    let mut val = Valuation::new();
    lens_objects(&objects, &mut val)?;
    morphisms(&FinGameCategory, sig, val, raw, |name, v, dom, cod| {
        let Some(d) = v.get("decision") else {
            return Ok(lift_lens(&lens_from_json(name, v, dom, cod)?));
        };
        if !dom.backward.is_unit() {
            return Err(Error::Valuation(format!(
                "`{name}`: a decision has domain (X, 1), not {dom}"
            )));
        }
        let payoffs = &cod.backward;
        let values = (0..payoffs.size())
            .map(|i| {
                let label = payoffs.element(i);
                let text = match d.get("utility").and_then(|u| u.get(&label)) {
                    Some(u) => scalar_name(u)?,
                    None => label.clone(),
                };
                text.parse::<Rational64>()
                    .map_err(|_| Error::Valuation(format!("`{name}`: no rational utility for payoff `{label}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        decision(name, &dom.forward, &cod.forward, payoffs, &values)
    })
}

pub fn rel_to_json(r: &FinRel) -> Value {
    let pairs: Vec<Value> = r
        .pairs()
        .into_iter()
        .map(|(a, b)| json!([r.dom.element(a), r.cod.element(b)]))
        .collect();
    let matrix: Vec<Vec<u8>> = (0..r.dom.size())
        .map(|a| (0..r.cod.size()).map(|b| u8::from(r.holds(a, b))).collect())
        .collect();
    json!({"dom": r.dom, "cod": r.cod, "matrix": matrix, "pairs": pairs})
}

pub fn rel_to_text(r: &FinRel) -> String {
    let mut out = format!("{} → {}\n", r.dom.name(), r.cod.name());
    let header: Vec<String> = r.cod.elements();
    out.push_str(&format!("\t{}\n", header.join("\t")));
    for a in 0..r.dom.size() {
        let row: Vec<&str> = (0..r.cod.size())
            .map(|b| if r.holds(a, b) { "1" } else { "0" })
            .collect();
        out.push_str(&format!("{}\t{}\n", r.dom.element(a), row.join("\t")));
    }
    out
}

fn lens_tables(l: &FinLens) -> (BTreeMap<String, String>, BTreeMap<String, BTreeMap<String, String>>) {
    let (x, s) = (&l.dom.forward, &l.dom.backward);
    let (y, r) = (&l.cod.forward, &l.cod.backward);
    let view = (0..x.size()).map(|i| (x.element(i), y.element(l.view_at(i)))).collect();
    let update = (0..x.size())
        .map(|i| {
            let row = (0..r.size())
                .map(|j| (r.element(j), s.element(l.update_at(i, j))))
                .collect();
            (x.element(i), row)
        })
        .collect();
    (view, update)
}

pub fn lens_to_json(l: &FinLens) -> Value {
    let (view, update) = lens_tables(l);
    json!({"dom": l.dom.to_string(), "cod": l.cod.to_string(), "view": view, "update": update})
}

pub fn lens_to_text(l: &FinLens) -> String {
    let (view, update) = lens_tables(l);
    let mut out = format!("{} → {}\nview\n", l.dom, l.cod);
    for (x, y) in &view {
        out.push_str(&format!("  {x} ↦ {y}\n"));
    }
    out.push_str("update\n");
    for (x, row) in &update {
        for (r, s) in row {
            out.push_str(&format!("  {x}, {r} ↦ {s}\n"));
        }
    }
    out
}

/// Strategies, plus tables when there is one strategy and the equilibria
/// when the game is closed.
pub fn game_to_json(g: &FinGame) -> Value {
    let mut v = json!({
        "dom": g.dom.to_string(),
        "cod": g.cod.to_string(),
        "strategies": g.strategies,
    });
    if let Some(l) = g.as_lens() {
        let (view, update) = lens_tables(&l);
        v["view"] = json!(view);
        v["update"] = json!(update);
    }
    if let Ok(s) = scalar_of(g) {
        let eq: Vec<String> = s.equilibria().into_iter().map(|i| s.strategies.element(i)).collect();
        v["equilibria"] = json!(eq);
    }
    v
}

pub fn game_to_text(g: &FinGame) -> String {
    let mut out = format!(
        "{} → {}\nstrategies {} ({})\n",
        g.dom,
        g.cod,
        g.strategies.name(),
        g.strategies.size()
    );
    if let Some(l) = g.as_lens() {
        out.push_str(
            &lens_to_text(&l)
                .lines()
                .skip(1)
                .map(|l| format!("{l}\n"))
                .collect::<String>(),
        );
    }
    if let Ok(s) = scalar_of(g) {
        out.push_str("equilibria\n");
        for i in s.equilibria() {
            out.push_str(&format!("  {}\n", s.strategies.element(i)));
        }
    }
    out
}
