//! Two-player sequential games built as closed diagrams: player one picks
//! `x`, player two picks `y` seeing all, none or a coarsening of `x`, and a
//! utility function pays both.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{computation_cov, decision, oracle_nash, scalar_of, ClassicalGame, FinGameCategory, OracleResult};
use crate::error::{Error, Result};
use crate::eval::{evaluate, Valuation};
use crate::finset::{all_functions, exponential, FinSet};
use crate::graph::elaborate;
use crate::lens::LensObject;
use crate::signature::{MorphismDecl, TeleologicalSignature, Word};
use crate::term::{parse_term, typecheck, Term};

/// What the second player observes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Nothing: a simultaneous game.
    A,
    /// The first player's move.
    B,
    /// The class of the first player's move in a partition.
    C,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::A, Variant::B, Variant::C];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "a",
            Variant::B => "b",
            Variant::C => "c",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Variant::A),
            "b" => Ok(Variant::B),
            "c" => Ok(Variant::C),
            _ => Err(Error::Fixture(format!("unknown variant `{s}`, expected a, b or c"))),
        }
    }
}

/// A partition of the first player's moves, as classes of move names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition(pub Vec<Vec<String>>);

impl Partition {
    /// Class index of each move, checked to be a partition of `moves`.
    pub fn classes(&self, moves: &[String]) -> Result<Vec<usize>> {
        let mut class = vec![usize::MAX; moves.len()];
        for (c, members) in self.0.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidPartition(format!("class {c} is empty")));
            }
            for m in members {
                let i = moves
                    .iter()
                    .position(|x| x == m)
                    .ok_or_else(|| Error::InvalidPartition(format!("`{m}` is not a move")))?;
                if class[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("`{m}` is in two classes")));
                }
                class[i] = c;
            }
        }
        if let Some(i) = class.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!("`{}` is in no class", moves[i])));
        }
        Ok(class)
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|c| format!("{{{}}}", c.join(","))).collect()
    }
}

/// A two-player game table. `payoffs[i][j]` holds the two players'
/// utilities, as rationals written `n` or `n/d`, when the moves are `x[i]`
/// and `y[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameFixture {
    pub name: String,
    #[serde(default)]
    pub variant: Option<Variant>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub payoffs: Vec<Vec<[String; 2]>>,
    #[serde(default)]
    pub partition: Option<Partition>,
}

impl GameFixture {
    pub fn from_json(text: &str) -> Result<GameFixture> {
        let f: GameFixture = serde_json::from_str(text)?;
        f.utilities()?;
        if let Some(p) = &f.partition {
            p.classes(&f.x)?;
        }
        Ok(f)
    }

    /// `u[i][j] = (u₁, u₂)`.
    pub fn utilities(&self) -> Result<Vec<Vec<(Rational64, Rational64)>>> {
        if self.x.is_empty() || self.y.is_empty() {
            return Err(Error::Fixture(format!("{}: both players need a move", self.name)));
        }
        if self.payoffs.len() != self.x.len() || self.payoffs.iter().any(|row| row.len() != self.y.len()) {
            return Err(Error::Fixture(format!(
                "{}: payoffs must be a {}×{} table",
                self.name,
                self.x.len(),
                self.y.len()
            )));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<Rational64>()
                .map_err(|_| Error::Fixture(format!("{}: `{s}` is not a rational", self.name)))
        };
        self.payoffs
            .iter()
            .map(|row| row.iter().map(|[a, b]| Ok((parse(a)?, parse(b)?))).collect())
            .collect()
    }

    /// The partition in force for variant c; one class if none is given.
    pub fn partition(&self) -> Partition {
        self.partition
            .clone()
            .unwrap_or_else(|| Partition(vec![self.x.clone()]))
    }

    fn moves(&self) -> Result<(FinSet, FinSet)> {
        Ok((FinSet::new("X", self.x.clone())?, FinSet::new("Y", self.y.clone())?))
    }

    /// Distinct utility values, sorted.
    fn payoff_set(&self) -> Result<(FinSet, Vec<Rational64>)> {
        let values: BTreeSet<Rational64> = self
            .utilities()?
            .into_iter()
            .flatten()
            .flat_map(|(a, b)| [a, b])
            .collect();
        let values: Vec<Rational64> = values.into_iter().collect();
        let set = FinSet::new("R", values.iter().map(ToString::to_string).collect())?;
        Ok((set, values))
    }

    fn quotient(&self) -> Result<(FinSet, Vec<usize>)> {
        let p = self.partition();
        let class = p.classes(&self.x)?;
        Ok((FinSet::new("Q", p.names())?, class))
    }
}

/// A closed diagram for one variant, with its signature and a valuation in
/// open games.
#[derive(Debug, Clone)]
pub struct TwoPlayer {
    pub variant: Variant,
    pub signature: TeleologicalSignature,
    pub term: Term,
    pub valuation: Valuation<FinGameCategory>,
}

fn w(s: &str) -> Word {
    Word::parse(s).expect("well-formed word")
}

const TERM_A: &str = "(D1 | D2) ; (id(x) | sym(p* ; y) | id(p*)) ; (u | id(p*, p*)) ; cup(p, p)";
const TERM_B: &str = "D1 ; (copy | id(p*)) ; (id(x) | D2 | id(p*)) ; (u | sym(p* ; p*)) ; cup(p, p)";
const TERM_C: &str =
    "D1 ; (copy | id(p*)) ; (id(x) | proj | id(p*)) ; (id(x) | D2 | id(p*)) ; (u | sym(p* ; p*)) ; cup(p, p)";

pub fn build_two_player(fixture: &GameFixture, variant: Variant) -> Result<TwoPlayer> {
    let (x, y) = fixture.moves()?;
    let (r, values) = fixture.payoff_set()?;
    let u = fixture.utilities()?;
    let (nx, ny, nr) = (x.size(), y.size(), r.size());
    let index = |v: Rational64| values.binary_search(&v).expect("value is listed");

    let mut sig = TeleologicalSignature::new()
        .with_object("x")
        .with_object("y")
        .with_object("p")
        .with_morphism(MorphismDecl::new("D1", w(""), w("x, p*"), false))
        .with_morphism(MorphismDecl::new("u", w("x, y"), w("p, p"), true));
    let unit = FinSet::unit();
    let covariant = |s: &FinSet| LensObject::new(s.clone(), FinSet::unit());
    let mut val = Valuation::<FinGameCategory>::new()
        .with_object("x", covariant(&x))
        .with_object("y", covariant(&y))
        .with_object("p", covariant(&r));

    let table: Vec<usize> = (0..nx)
        .flat_map(|i| (0..ny).map(move |j| (i, j)))
        .map(|(i, j)| index(u[i][j].0) * nr + index(u[i][j].1))
        .collect();
    val = val
        .with_morphism("D1", decision("D1", &unit, &x, &r, &values)?)
        .with_morphism("u", computation_cov(&x.product(&y), &r.product(&r), &table)?);

    let text = match variant {
        Variant::A => {
            sig = sig.with_morphism(MorphismDecl::new("D2", w(""), w("y, p*"), false));
            val = val.with_morphism("D2", decision("D2", &unit, &y, &r, &values)?);
            TERM_A
        }
        Variant::B | Variant::C => {
            let copy: Vec<usize> = (0..nx).map(|i| i * nx + i).collect();
            sig = sig.with_morphism(MorphismDecl::new("copy", w("x"), w("x, x"), true));
            val = val.with_morphism("copy", computation_cov(&x, &x.product(&x), &copy)?);
            if variant == Variant::B {
                sig = sig.with_morphism(MorphismDecl::new("D2", w("x"), w("y, p*"), false));
                val = val.with_morphism("D2", decision("D2", &x, &y, &r, &values)?);
                TERM_B
            } else {
                let (q, class) = fixture.quotient()?;
                sig = sig
                    .with_object("q")
                    .with_morphism(MorphismDecl::new("proj", w("x"), w("q"), true))
                    .with_morphism(MorphismDecl::new("D2", w("q"), w("y, p*"), false));
                val = val
                    .with_object("q", covariant(&q))
                    .with_morphism("proj", computation_cov(&x, &q, &class)?)
                    .with_morphism("D2", decision("D2", &q, &y, &r, &values)?);
                TERM_C
            }
        }
    };
    sig.validate()?;
    Ok(TwoPlayer {
        variant,
        signature: sig,
        term: parse_term(text)?,
        valuation: val,
    })
}

/// The same game in strategic form, with strategies `X` for the first
/// player and `Y`, `Y^X` or `Y^(X/∼)` for the second.
pub fn strategic_form(fixture: &GameFixture, variant: Variant) -> Result<ClassicalGame> {
    let (x, y) = fixture.moves()?;
    let u = fixture.utilities()?;
    let (observed, seen): (FinSet, Vec<usize>) = match variant {
        Variant::A => (FinSet::unit(), vec![0; x.size()]),
        Variant::B => (x.clone(), (0..x.size()).collect()),
        Variant::C => fixture.quotient()?,
    };
    let first = exponential("D1", &FinSet::unit(), &x);
    let second = exponential("D2", &observed, &y);
    let tables = all_functions(observed.size(), y.size());
    let mut payoffs = Vec::new();
    for i in 0..x.size() {
        for t in &tables {
            let (a, b) = u[i][t[seen[i]]];
            payoffs.push(vec![a, b]);
        }
    }
    ClassicalGame::new(vec!["D1".into(), "D2".into()], vec![first, second], payoffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub variant: Variant,
    /// The evaluated diagram's best responses, renumbered as oracle profiles.
    pub best: Vec<Vec<usize>>,
    pub equilibria: Vec<usize>,
    pub oracle: OracleResult,
    /// The diagram's equilibria written out.
    pub described: Vec<String>,
    /// Oracle equilibria written out.
    pub oracle_described: Vec<String>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.best == self.oracle.best && self.equilibria == self.oracle.equilibria && self.oracle.consistent()
    }
}

/// Evaluates the diagram, reads off its equilibria and compares them with
/// the brute-force strategic form.
pub fn compare_two_player(fixture: &GameFixture, variant: Variant) -> Result<Comparison> {
    let diagram = build_two_player(fixture, variant)?;
    let typed = typecheck(&diagram.term, &diagram.signature)?;
    let graph = elaborate(&typed);
    diagram.valuation.check(&FinGameCategory, &diagram.signature)?;
    let game = evaluate(&FinGameCategory, &graph, &diagram.valuation)?;
    let scalar = scalar_of(&game)?;
    let classical = strategic_form(fixture, variant)?;
    let oracle = oracle_nash(&classical);

    let to_oracle = |s: usize| -> Result<usize> {
        let coords = scalar.strategies.coordinates(s);
        let mut profile = vec![0; classical.players.len()];
        for (factor, c) in scalar.strategies.factors().iter().zip(coords) {
            let player = classical
                .players
                .iter()
                .position(|p| *p == factor.name)
                .ok_or_else(|| Error::Fixture(format!("strategy factor `{}` belongs to no player", factor.name)))?;
            profile[player] = classical.strategies[player]
                .index_of(&factor.elements[c])
                .ok_or_else(|| Error::Fixture(format!("`{}` is not a strategy", factor.elements[c])))?;
        }
        Ok(classical.encode(&profile))
    };
    let n = scalar.strategies.size();
    if n != classical.profile_count() {
        return Err(Error::Fixture(format!(
            "{} profiles in the diagram, {} in strategic form",
            n,
            classical.profile_count()
        )));
    }
    let renumber: Vec<usize> = (0..n).map(to_oracle).collect::<Result<_>>()?;
    let mut best = vec![Vec::new(); n];
    for s in 0..n {
        let mut b: Vec<usize> = scalar.best[s].iter().map(|&t| renumber[t]).collect();
        b.sort_unstable();
        best[renumber[s]] = b;
    }
    let mut equilibria: Vec<usize> = scalar.equilibria().iter().map(|&s| renumber[s]).collect();
    equilibria.sort_unstable();
    let described = equilibria.iter().map(|&p| classical.describe(p)).collect();
    let oracle_described = oracle.equilibria.iter().map(|&p| classical.describe(p)).collect();
    Ok(Comparison {
        variant,
        best,
        equilibria,
        oracle,
        described,
        oracle_described,
    })
}
