//! The acceptance suite. Each criterion prints one line; the process exits
//! nonzero if any criterion fails.

mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use teleo::cli::cmd_eq;
use teleo::equiv::{circuit_iso, teleo_eq};
use teleo::eval::{check_axioms, evaluate, AxiomReport, Valuation};
use teleo::finset::FinSet;
use teleo::game::{compare_two_player, lift_lens, FinGameCategory, GameFixture, Variant};
use teleo::graph::{elaborate, CircuitGraph};
use teleo::lens::{all_adaptors, lens_compose, lens_counit, lens_dual, lens_id, lens_tensor, FinLensCategory};
use teleo::rel::{all_relations, FinRel, FinRelCategory};
use teleo::signature::TeleologicalSignature;
use teleo::term::{dual_term, typecheck, Term};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn FnOnce(&mut StdRng) -> Verdict + 'a>);

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn counit_law() -> Verdict {
    let objs = lens_objects(3);
    let mut checked = 0;
    for a in &objs {
        for b in &objs {
            let lhs_pre_id = lens_id(&b.dual());
            let rhs_pre_id = lens_id(a);
            let (eb, ea) = (lens_counit(b), lens_counit(a));
            for f in all_adaptors(a, b) {
                let fs = lens_dual(&f).map_err(|e| e.to_string())?;
                let lhs = lens_compose(&lens_tensor(&f, &lhs_pre_id), &eb).map_err(|e| e.to_string())?;
                let rhs = lens_compose(&lens_tensor(&rhs_pre_id, &fs), &ea).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("differs for an adaptor {a} → {b}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} adaptors"))
}

fn report(name: &str, r: &AxiomReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!(
            "{name}: {} failures, first: {}",
            r.failures.len(),
            r.failures[0]
        ))
    }
}

fn axiom_suite(rng: &mut StdRng) -> Verdict {
    let small: Vec<FinSet> = (1..=2).map(|n| FinSet::range("S", n)).collect();
    let mut rels = Vec::new();
    for a in &small {
        for b in &small {
            rels.extend(all_relations(a, b));
        }
    }
    let rel = check_axioms(&FinRelCategory, &small, &rels);
    report("rel", &rel)?;

    let three: Vec<FinSet> = (1..=3).map(|n| FinSet::range("S", n)).collect();
    let mut sampled = AxiomReport::default();
    let mut samples = 0;
    for _ in 0..10 {
        let batch: Vec<FinRel> = (0..60)
            .map(|_| {
                let a = three.choose(rng).unwrap().clone();
                let b = three[2].clone();
                let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                let m = (0..a.size() * b.size()).map(|_| rng.gen_bool(0.5)).collect();
                FinRel::new(a, b, m).unwrap()
            })
            .collect();
        samples += batch.len();
        sampled.merge(check_axioms(&FinRelCategory, &three, &batch));
    }
    report("rel size 3", &sampled)?;

    let objs = lens_objects(2);
    let mut adaptors = Vec::new();
    for a in &objs {
        for b in &objs {
            adaptors.extend(all_adaptors(a, b));
        }
    }
    let lens = check_axioms(&FinLensCategory, &objs, &adaptors);
    report("lens", &lens)?;
    let games: Vec<_> = adaptors.iter().map(lift_lens).collect();
    let game = check_axioms(&FinGameCategory, &objs, &games);
    report("game", &game)?;
    Ok(format!(
        "rel {} + {} from {samples} size-3 samples, lens {}, game {} instances",
        rel.checked, sampled.checked, lens.checked, game.checked
    ))
}

fn coherence(rng: &mut StdRng, sig: &TeleologicalSignature) -> Verdict {
    let mut pairs = 0;
    for i in 0..250 {
        let rule = Rewrite::ALL[i % Rewrite::ALL.len()];
        let (l, r) = rewrite_pair(rng, sig, rule);
        let (a, b) = (graph_of(&l, sig), graph_of(&r, sig));
        if !teleo_eq(&a, &b) {
            return Err(format!("{rule:?}: {l} and {r} not equivalent"));
        }
        for _ in 0..2 {
            let rv = random_rel_valuation(rng, sig, 3);
            if evaluate(&FinRelCategory, &a, &rv).unwrap() != evaluate(&FinRelCategory, &b, &rv).unwrap() {
                return Err(format!("{rule:?}: {l} and {r} differ in relations"));
            }
            let lv = random_lens_valuation(rng, sig, 3);
            if evaluate(&FinLensCategory, &a, &lv).unwrap() != evaluate(&FinLensCategory, &b, &lv).unwrap() {
                return Err(format!("{rule:?}: {l} and {r} differ in lenses"));
            }
        }
        pairs += 1;
    }
    Ok(format!("{pairs} rewrite pairs"))
}

fn iso_oracle(rng: &mut StdRng, sig: &TeleologicalSignature) -> Verdict {
    let mut corpus: Vec<CircuitGraph> = Vec::new();
    let small = |g: &CircuitGraph| g.nodes.len() <= 8;
    while corpus.len() < 60 {
        let dom = random_word(rng, 1, 2, false);
        let shape = Shape {
            steps: 4,
            ..Shape::default()
        };
        let (t, _) = random_term(rng, sig, &dom, shape);
        let g = graph_of(&t, sig);
        if small(&g) {
            let copy = renumber(rng, &g);
            corpus.push(g);
            corpus.push(copy);
        }
    }
    while corpus.len() < 120 {
        let rule = *Rewrite::ALL.choose(rng).unwrap();
        let (l, r) = rewrite_pair(rng, sig, rule);
        let (a, b) = (graph_of(&l, sig), graph_of(&r, sig));
        if small(&a) && small(&b) {
            corpus.push(a);
            corpus.push(b);
        }
    }
    let (mut pairs, mut iso) = (0, 0);
    for a in &corpus {
        for b in &corpus {
            let fast = circuit_iso(a, b);
            if fast != brute_force_iso(a, b) {
                return Err(format!(
                    "disagreement on a pair of graphs with {} and {} nodes",
                    a.nodes.len(),
                    b.nodes.len()
                ));
            }
            pairs += 1;
            iso += usize::from(fast);
        }
    }
    Ok(format!(
        "{} graphs, {pairs} ordered pairs, {iso} isomorphic",
        corpus.len()
    ))
}

fn counit_decidability() -> Verdict {
    let sig = fixtures().join("counit.sig.json");
    let run = |file: &str| {
        cmd_eq(&sig, &[fixtures().join(file)], "t", false)
            .map(|o| (o.code, o.stdout.lines().next().unwrap_or_default().to_string()))
            .map_err(|e| e.to_string())
    };
    let (code, verdict) = run("counit-law.terms")?;
    if code != 0 || verdict != "equivalent" {
        return Err(format!("dualisable pair gave `{verdict}` (exit {code})"));
    }
    let (code, verdict) = run("counit-law-nondual.terms")?;
    if code != 1 || verdict != "not-equivalent" {
        return Err(format!("non-dualisable pair gave `{verdict}` (exit {code})"));
    }
    Ok("equivalent / not-equivalent".into())
}

fn games() -> Verdict {
    let mut names = Vec::new();
    let mut paths: Vec<PathBuf> = fs::read_dir(fixtures().join("games"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    for p in paths {
        let f =
            GameFixture::from_json(&fs::read_to_string(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if f.x.len() > 3 || f.y.len() > 3 {
            return Err(format!("{} has more than three moves", f.name));
        }
        for v in Variant::ALL {
            let c = compare_two_player(&f, v).map_err(|e| format!("{} {v}: {e}", f.name))?;
            if !c.agrees() {
                return Err(format!(
                    "{} {v}: {} vs {}",
                    f.name,
                    c.described.join("; "),
                    c.oracle_described.join("; ")
                ));
            }
        }
        names.push(f.name);
    }
    Ok(format!("{} fixtures × 3 variants", names.len()))
}

fn rel_cup() -> Verdict {
    let sig = TeleologicalSignature::new().with_object("x");
    let g = graph_of(&Term::Cup(w("x")), &sig);
    for n in 1..=3 {
        let x = FinSet::range("X", n);
        let v: Valuation<FinRelCategory> = Valuation::new().with_object("x", x.clone());
        let r = evaluate(&FinRelCategory, &g, &v).map_err(|e| e.to_string())?;
        if r.dom.size() != n * n || r.cod.size() != 1 {
            return Err(format!("wrong type at |X| = {n}"));
        }
        for a in 0..n {
            for b in 0..n {
                if r.holds(a * n + b, 0) != (a == b) {
                    return Err(format!("not the diagonal at |X| = {n}"));
                }
            }
        }
    }
    Ok("|X| = 1, 2, 3".into())
}

fn duality(rng: &mut StdRng, sig: &TeleologicalSignature) -> Verdict {
    for i in 0..150 {
        let t = dualisable_term(rng, sig);
        let tt = typecheck(&t, sig).map_err(|e| e.to_string())?;
        let d = dual_term(&tt).map_err(|e| e.to_string())?;
        if dual_term(&d).map_err(|e| e.to_string())?.term() != tt.term() {
            return Err(format!("term {i}: dual not involutive on {t}"));
        }
        let g = elaborate(&tt)
            .dual()
            .ok_or_else(|| format!("term {i}: graph of {t} has no dual"))?;
        if !circuit_iso(&elaborate(&d), &g) {
            return Err(format!("term {i}: elaborating the dual of {t} differs"));
        }
    }
    Ok("150 dualisable terms".into())
}

fn main() -> ExitCode {
    let sig = signature();
    let mut rng = StdRng::seed_from_u64(0x7e1e0);
    let criteria: Vec<Criterion> = vec![
        (
            "counit law for lens adaptors",
            Duration::from_secs(60),
            Box::new(|_| counit_law()),
        ),
        (
            "axiom suite in rel, lens and game",
            Duration::from_secs(120),
            Box::new(axiom_suite),
        ),
        (
            "rewrites are equivalences and evaluate equally",
            Duration::from_secs(300),
            Box::new(|r| coherence(r, &sig)),
        ),
        (
            "circuit isomorphism against brute force",
            Duration::from_secs(120),
            Box::new(|r| iso_oracle(r, &sig)),
        ),
        (
            "counit law decided on the command line",
            Duration::from_secs(5),
            Box::new(|_| counit_decidability()),
        ),
        (
            "compositional equilibria match the oracle",
            Duration::from_secs(120),
            Box::new(|_| games()),
        ),
        (
            "cup is the diagonal relation",
            Duration::from_secs(1),
            Box::new(|_| rel_cup()),
        ),
        (
            "duality is involutive and commutes with elaboration",
            Duration::from_secs(30),
            Box::new(|r| duality(r, &sig)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut verdict = check(&mut rng);
        let took = start.elapsed();
        if verdict.is_ok() && took > budget {
            verdict = Err(format!("took {took:.2?}, budget {budget:?}"));
        }
        match verdict {
            Ok(d) => println!("[PASS] {} {name}: {d} ({took:.2?})", i + 1),
            Err(d) => {
                failed += 1;
                println!("[FAIL] {} {name}: {d} ({took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
