//! Frozen expectations for the brute-force equilibrium oracle and for the
//! brute-force isomorphism search, checked before anything is compared
//! against them.

mod common;

use std::fs;
use std::path::Path;

use common::{brute_force_iso, graph_of, signature};
use num_rational::Rational64;
use teleo::finset::FinSet;
use teleo::game::{compare_two_player, oracle_nash, strategic_form, ClassicalGame, GameFixture, Variant};
use teleo::term::parse_term;

fn fixture(name: &str) -> GameFixture {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/games").join(name);
    GameFixture::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

fn equilibria(name: &str, v: Variant) -> Vec<String> {
    let g = strategic_form(&fixture(name), v).unwrap();
    let o = oracle_nash(&g);
    assert!(o.consistent(), "{name} {v}: fixed points and deviation check disagree");
    o.equilibria.iter().map(|&p| g.describe(p)).collect()
}

#[test]
fn frozen_equilibria() {
    assert_eq!(equilibria("prisoners-dilemma.json", Variant::A), ["D1=D D2=D"]);
    assert_eq!(equilibria("prisoners-dilemma.json", Variant::B), ["D1=D D2=[D,D]"]);
    assert!(equilibria("matching-pennies.json", Variant::A).is_empty());
    assert_eq!(
        equilibria("matching-pennies.json", Variant::B),
        ["D1=H D2=[T,H]", "D1=T D2=[T,H]"]
    );
    assert!(equilibria("rock-paper-scissors.json", Variant::A).is_empty());
    assert_eq!(
        equilibria("battle-of-the-sexes.json", Variant::A),
        ["D1=Opera D2=Opera", "D1=Football D2=Football"]
    );
    assert_eq!(
        equilibria("stag-hunt.json", Variant::A),
        ["D1=Stag D2=Stag", "D1=Hare D2=Hare"]
    );
    assert_eq!(
        equilibria("entry-deterrence.json", Variant::B),
        [
            "D1=Out D2=[Fight,Fight]",
            "D1=Out D2=[Accommodate,Fight]",
            "D1=In D2=[Fight,Accommodate]",
            "D1=In D2=[Accommodate,Accommodate]"
        ]
    );
    assert_eq!(
        equilibria("signalling.json", Variant::C),
        ["D1=M D2=[D,U]", "D1=R D2=[D,D]"]
    );
    assert!(equilibria("hidden-move.json", Variant::C).is_empty());
}

#[test]
fn one_class_partition_is_the_simultaneous_game() {
    for name in ["prisoners-dilemma.json", "stag-hunt.json", "battle-of-the-sexes.json"] {
        let mut f = fixture(name);
        f.partition = None;
        let a = strategic_form(&f, Variant::A).unwrap();
        let c = strategic_form(&f, Variant::C).unwrap();
        assert_eq!(a.payoffs, c.payoffs);
        assert_eq!(oracle_nash(&a), oracle_nash(&c));
    }
}

#[test]
fn oracle_on_a_three_player_game() {
    let two = FinSet::from_strs("S", &["0", "1"]).unwrap();
    // everyone wants to match player one
    let mut payoffs = Vec::new();
    for p in 0..8usize {
        let (a, b, c) = (p >> 2 & 1, p >> 1 & 1, p & 1);
        let u = |same: bool| Rational64::from(i64::from(same));
        payoffs.push(vec![u(a == b && a == c), u(b == a), u(c == a)]);
    }
    let g = ClassicalGame::new(vec!["a".into(), "b".into(), "c".into()], vec![two; 3], payoffs).unwrap();
    let o = oracle_nash(&g);
    assert_eq!(o.equilibria, vec![0, 7]);
    assert!(o.consistent());
}

#[test]
fn fixtures_reject_bad_partitions() {
    let bad = r#"{"name":"bad","x":["a","b"],"y":["c"],"payoffs":[[["1","1"]],[["0","0"]]],"partition":[["a"]]}"#;
    assert!(GameFixture::from_json(bad).is_err());
    let twice =
        r#"{"name":"bad","x":["a","b"],"y":["c"],"payoffs":[[["1","1"]],[["0","0"]]],"partition":[["a","b"],["b"]]}"#;
    assert!(GameFixture::from_json(twice).is_err());
    let ragged = r#"{"name":"bad","x":["a","b"],"y":["c"],"payoffs":[[["1","1"]]]}"#;
    assert!(GameFixture::from_json(ragged).is_err());
}

#[test]
fn diagram_matches_oracle_on_every_fixture() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/games");
    for entry in fs::read_dir(dir).unwrap() {
        let f = GameFixture::from_json(&fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        for v in Variant::ALL {
            let c = compare_two_player(&f, v).unwrap();
            assert!(c.agrees(), "{} {v}", f.name);
        }
    }
}

#[test]
fn brute_force_iso_basics() {
    let sig = signature();
    let g = |s: &str| graph_of(&parse_term(s).unwrap(), &sig);
    assert!(brute_force_iso(&g("f | f"), &g("(f | id(x)) ; (id(y) | f)")));
    assert!(brute_force_iso(&g("(f | g) ; sym(y ; x)"), &g("sym(x ; y) ; (g | f)")));
    assert!(!brute_force_iso(&g("(s ; k) | s"), &g("s | (s ; k)")));
    assert!(!brute_force_iso(
        &g("(f | id(y*)) ; cup(y)"),
        &g("(id(x) | f^) ; cup(x)")
    ));
    assert!(!brute_force_iso(&g("c ; (k | id(x))"), &g("c ; (id(x) | k)")));
}
