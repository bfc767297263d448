//! The `teleo` command line. Every command returns its output and an exit
//! code: 0 for success, 1 for a negative verdict, 2 for unreadable input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::equiv::{circuit_iso, teleo_witness};
use crate::error::{Error, Result};
use crate::eval::{check_axioms, evaluate, AxiomReport};
use crate::finset::FinSet;
use crate::game::{compare_two_player, lift_lens, FinGameCategory, GameFixture, Variant};
use crate::graph::{elaborate, render_dot, validate_graph_against, CircuitGraph};
use crate::io::{
    game_to_json, game_to_text, lens_to_json, lens_to_text, load_game_valuation, load_lens_valuation,
    load_rel_valuation, parse_term_file, rel_to_json, rel_to_text,
};
use crate::lens::{all_adaptors, FinLensCategory, LensObject};
use crate::rel::{all_relations, FinRelCategory};
use crate::signature::{expand_signature, TeleologicalSignature};
use crate::term::{typecheck, Term, TypedTerm};

#[derive(Debug, Parser)]
#[command(
    name = "teleo",
    version,
    about = "Teleological string diagrams: typing, equivalence, evaluation"
)]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to a file instead of stdout.
    #[arg(short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Instance {
    Rel,
    Lens,
    Game,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Typecheck every term of a term file.
    Check {
        #[arg(long)]
        sig: PathBuf,
        terms: PathBuf,
    },
    /// Compare the two terms of the given term files.
    Eq {
        #[arg(long)]
        sig: PathBuf,
        /// `c` for circuit isomorphism, `t` for teleological equivalence.
        #[arg(long, default_value = "t")]
        mode: String,
        #[arg(required = true, num_args = 1..=2)]
        terms: Vec<PathBuf>,
    },
    /// Evaluate every term of a term file in a concrete instance.
    Eval {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        val: PathBuf,
        #[arg(long, value_enum)]
        instance: Instance,
        terms: PathBuf,
    },
    /// Check the instance axioms, on a valuation's values or on all small
    /// sets and adaptors.
    Laws {
        #[arg(long, value_enum)]
        instance: Instance,
        #[arg(long, requires = "val")]
        sig: Option<PathBuf>,
        #[arg(long, requires = "sig")]
        val: Option<PathBuf>,
        /// Largest carrier size in the generated sample.
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// Equilibria of a two-player game fixture, built as a diagram and
    /// checked against brute force.
    Nash {
        /// `a`, `b` or `c`; by default the fixture's own variant, or all.
        #[arg(long)]
        mode: Option<String>,
        fixture: PathBuf,
    },
    /// Draw the terms of a term file as DOT.
    Render {
        #[arg(long)]
        sig: PathBuf,
        terms: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn verdict(stdout: String, positive: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if positive { 0 } else { 1 },
        }
    }

    fn input_error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        }
    }
}

/// Runs a parsed command line, writing to `-o` when given.
pub fn run(cli: &Cli) -> Outcome {
    let out = match dispatch(cli) {
        Ok(o) => o,
        Err(e) => return Outcome::input_error(&e),
    };
    if let Some(path) = &cli.output {
        if let Err(e) = fs::write(path, &out.stdout) {
            return Outcome::input_error(&Error::from(e));
        }
        return Outcome {
            stdout: String::new(),
            ..out
        };
    }
    out
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Check { sig, terms } => cmd_check(sig, terms, json),
        Command::Eq { sig, mode, terms } => cmd_eq(sig, terms, mode, json),
        Command::Eval {
            sig,
            val,
            instance,
            terms,
        } => cmd_eval(sig, val, *instance, terms, json),
        Command::Laws {
            instance,
            sig,
            val,
            size,
        } => cmd_laws(*instance, sig.as_deref().zip(val.as_deref()), *size, json),
        Command::Nash { mode, fixture } => cmd_nash(fixture, mode.as_deref(), json),
        Command::Render { sig, terms } => cmd_render(sig, terms),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_signature(path: &Path) -> Result<TeleologicalSignature> {
    TeleologicalSignature::from_json(&read(path)?)
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

/// Typechecks, elaborates and validates against the signature.
fn well_formed(t: &Term, sig: &TeleologicalSignature) -> Result<(TypedTerm, CircuitGraph)> {
    let typed = typecheck(t, sig)?;
    let g = elaborate(&typed);
    validate_graph_against(&g, &expand_signature(sig))?;
    Ok((typed, g))
}

/// Typechecks each term; an ill-formed term is a negative verdict.
pub fn cmd_check(sig: &Path, terms: &Path, json: bool) -> Result<Outcome> {
    let sig = load_signature(sig)?;
    let text = read(terms)?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let parsed = match parse_term_file(&text) {
        Ok(p) => p,
        Err(e) => {
            let out = if json {
                render_json(&json!({"terms": [], "error": e.to_string()}))
            } else {
                format!("{e}\n")
            };
            return Ok(Outcome::verdict(out, false));
        }
    };
    for (line, t) in parsed {
        match well_formed(&t, &sig) {
            Ok((typed, _)) => {
                lines.push(format!("line {line}: {} → {}", typed.dom, typed.cod));
                rows.push(json!({"line": line, "dom": typed.dom, "cod": typed.cod}));
            }
            Err(e) => {
                lines.push(format!("line {line}: {e}"));
                let out = if json {
                    render_json(&json!({"terms": rows, "error": {"line": line, "message": e.to_string()}}))
                } else {
                    lines.join("\n") + "\n"
                };
                return Ok(Outcome::verdict(out, false));
            }
        }
    }
    let out = if json {
        render_json(&json!({"terms": rows}))
    } else {
        lines.join("\n") + "\n"
    };
    Ok(Outcome::ok(out))
}

/// Compares two terms with equal types.
pub fn cmd_eq(sig: &Path, files: &[PathBuf], mode: &str, json: bool) -> Result<Outcome> {
    let sig = load_signature(sig)?;
    let mut terms = Vec::new();
    for f in files {
        terms.extend(parse_term_file(&read(f)?)?.into_iter().map(|(_, t)| t));
    }
    if terms.len() != 2 {
        return Err(Error::Io(format!("expected two terms, found {}", terms.len())));
    }
    let (ta, a) = well_formed(&terms[0], &sig)?;
    let (tb, b) = well_formed(&terms[1], &sig)?;
    if ta.dom != tb.dom || ta.cod != tb.cod {
        return Err(Error::BoundaryMismatch(format!(
            "{} → {} vs {} → {}",
            ta.dom, ta.cod, tb.dom, tb.cod
        )));
    }
    let (equal, witness) = match mode {
        "c" => (circuit_iso(&a, &b), None),
        "t" => {
            let w = teleo_witness(&a, &b);
            (w.is_some(), w)
        }
        other => return Err(Error::Io(format!("unknown mode `{other}`, expected c or t"))),
    };
    let verdict = if equal { "equivalent" } else { "not-equivalent" };
    let out = if json {
        let mut v = json!({"mode": mode, "verdict": verdict});
        if let Some(w) = &witness {
            v["reflected"] = json!(w
                .nodes
                .iter()
                .map(|&n| a.nodes[n].label.to_string())
                .collect::<Vec<_>>());
        }
        render_json(&v)
    } else {
        let mut s = format!("{verdict}\n");
        if let Some(w) = witness.filter(|w| !w.is_empty()) {
            let names: Vec<String> = w.nodes.iter().map(|&n| a.nodes[n].label.to_string()).collect();
            s.push_str(&format!("reflected: {}\n", names.join(", ")));
        }
        s
    };
    Ok(Outcome::verdict(out, equal))
}

/// Evaluates each term and prints the resulting morphisms.
pub fn cmd_eval(sig: &Path, val: &Path, instance: Instance, terms: &Path, json: bool) -> Result<Outcome> {
    let sig = load_signature(sig)?;
    let val = read(val)?;
    let graphs: Vec<CircuitGraph> = parse_term_file(&read(terms)?)?
        .iter()
        .map(|(_, t)| well_formed(t, &sig).map(|(_, g)| g))
        .collect::<Result<_>>()?;
    let mut values = Vec::new();
    let mut texts = Vec::new();
    match instance {
        Instance::Rel => {
            let v = load_rel_valuation(&val, &sig)?;
            for g in &graphs {
                let m = evaluate(&FinRelCategory, g, &v)?;
                values.push(rel_to_json(&m));
                texts.push(rel_to_text(&m));
            }
        }
        Instance::Lens => {
            let v = load_lens_valuation(&val, &sig)?;
            for g in &graphs {
                let m = evaluate(&FinLensCategory, g, &v)?;
                values.push(lens_to_json(&m));
                texts.push(lens_to_text(&m));
            }
        }
        Instance::Game => {
            let v = load_game_valuation(&val, &sig)?;
            for g in &graphs {
                let m = evaluate(&FinGameCategory, g, &v)?;
                values.push(game_to_json(&m));
                texts.push(game_to_text(&m));
            }
        }
    }
    let out = if json {
        render_json(&Value::Array(values))
    } else {
        texts.join("\n")
    };
    Ok(Outcome::ok(out))
}

fn small_sets(n: usize) -> Vec<FinSet> {
    (1..=n).map(|k| FinSet::range(&format!("S{k}"), k)).collect()
}

fn small_lens_objects(n: usize) -> Vec<LensObject> {
    let sets = small_sets(n);
    sets.iter()
        .flat_map(|a| sets.iter().map(move |b| LensObject::new(a.clone(), b.clone())))
        .collect()
}

/// Checks the axioms on a valuation's objects and dualisable values, or
/// else on every set (or lens object) with carriers up to `size` and every
/// relation (or adaptor) between those of size at most two.
pub fn cmd_laws(instance: Instance, given: Option<(&Path, &Path)>, size: usize, json: bool) -> Result<Outcome> {
    let size = size.max(1);
    let small = size.min(2);
    let report: AxiomReport = match given {
        Some((sig, val)) => {
            let sig = load_signature(sig)?;
            let text = read(val)?;
            let names: Vec<&str> = sig.dualisable().map(|m| m.name.as_str()).collect();
            match instance {
                Instance::Rel => {
                    let v = load_rel_valuation(&text, &sig)?;
                    let fs: Vec<_> = names.iter().map(|n| v.morphisms[*n].clone()).collect();
                    check_axioms(&FinRelCategory, &v.objects.values().cloned().collect::<Vec<_>>(), &fs)
                }
                Instance::Lens => {
                    let v = load_lens_valuation(&text, &sig)?;
                    let fs: Vec<_> = names.iter().map(|n| v.morphisms[*n].clone()).collect();
                    check_axioms(&FinLensCategory, &v.objects.values().cloned().collect::<Vec<_>>(), &fs)
                }
                Instance::Game => {
                    let v = load_game_valuation(&text, &sig)?;
                    let fs: Vec<_> = names.iter().map(|n| v.morphisms[*n].clone()).collect();
                    check_axioms(&FinGameCategory, &v.objects.values().cloned().collect::<Vec<_>>(), &fs)
                }
            }
        }
        None => match instance {
            Instance::Rel => {
                let sets = small_sets(small);
                let fs: Vec<_> = sets
                    .iter()
                    .flat_map(|a| sets.iter().flat_map(move |b| all_relations(a, b)))
                    .collect();
                check_axioms(&FinRelCategory, &small_sets(size), &fs)
            }
            Instance::Lens | Instance::Game => {
                let objs = small_lens_objects(small);
                let fs: Vec<_> = objs
                    .iter()
                    .flat_map(|a| objs.iter().flat_map(move |b| all_adaptors(a, b)))
                    .collect();
                if instance == Instance::Lens {
                    check_axioms(&FinLensCategory, &small_lens_objects(size), &fs)
                } else {
                    let gs: Vec<_> = fs.iter().map(lift_lens).collect();
                    check_axioms(&FinGameCategory, &small_lens_objects(size), &gs)
                }
            }
        },
    };
    let out = if json {
        render_json(&json!(report))
    } else {
        let mut s = format!(
            "checked {} instances, {} failed\n",
            report.checked,
            report.failures.len()
        );
        for f in &report.failures {
            s.push_str(&format!("  {f}\n"));
        }
        s
    };
    Ok(Outcome::verdict(out, report.passed()))
}

/// Equilibria of the diagram against the brute-force oracle, per variant.
pub fn cmd_nash(fixture: &Path, mode: Option<&str>, json: bool) -> Result<Outcome> {
    let f = GameFixture::from_json(&read(fixture)?)?;
    let variants: Vec<Variant> = match (mode, f.variant) {
        (Some(m), _) => vec![m.parse()?],
        (None, Some(v)) => vec![v],
        (None, None) => Variant::ALL.to_vec(),
    };
    let mut all_agree = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    for v in variants {
        let cmp = compare_two_player(&f, v)?;
        let agree = cmp.agrees();
        all_agree &= agree;
        let verdict = if agree { "agreement" } else { "disagreement" };
        text.push_str(&format!("{} variant {v}\n", f.name));
        text.push_str(&format!("  compositional: {}\n", list(&cmp.described)));
        text.push_str(&format!("  oracle:        {}\n", list(&cmp.oracle_described)));
        text.push_str(&format!("  {verdict}\n"));
        rows.push(json!({
            "fixture": f.name,
            "variant": v,
            "compositional": cmp.described,
            "oracle": cmp.oracle_described,
            "best_response_tables_equal": cmp.best == cmp.oracle.best,
            "verdict": verdict,
        }));
    }
    let out = if json { render_json(&Value::Array(rows)) } else { text };
    Ok(Outcome::verdict(out, all_agree))
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join("; ")
    }
}

/// DOT for each term of the file, one digraph per term.
pub fn cmd_render(sig: &Path, terms: &Path) -> Result<Outcome> {
    let sig = load_signature(sig)?;
    let mut out = String::new();
    for (_, t) in parse_term_file(&read(terms)?)? {
        let (_, g) = well_formed(&t, &sig)?;
        out.push_str(&render_dot(&g));
    }
    Ok(Outcome::ok(out))
}
