//! A single decision closed off by a utility function, then a two-player
//! game built as a diagram and checked against brute force.

use num_rational::Rational64;
use teleo::finset::FinSet;
use teleo::game::{compare_two_player, decision, game_compose, lift_lens, scalar_of, GameFixture, Variant};
use teleo::lens::{FinLens, LensObject};

const FIXTURE: &str = r#"{
  "name": "chicken",
  "x": ["Swerve", "Straight"],
  "y": ["Swerve", "Straight"],
  "payoffs": [
    [["0", "0"], ["-1", "1"]],
    [["1", "-1"], ["-10", "-10"]]
  ]
}"#;

fn main() -> teleo::Result<()> {
    let one = FinSet::unit();
    let moves = FinSet::from_strs("Y", &["low", "mid", "high"])?;
    let payoffs = FinSet::from_strs("R", &["1", "5", "2"])?;
    let values: Vec<Rational64> = [1, 5, 2].into_iter().map(Rational64::from).collect();
    let d = decision("D", &one, &moves, &payoffs, &values)?;
    // the utility sends each move to the payoff of the same index
    let k = FinLens::new(
        LensObject::new(moves.clone(), payoffs),
        LensObject::unit(),
        vec![0; 3],
        vec![0, 1, 2],
    )?;
    let closed = scalar_of(&game_compose(&d, &lift_lens(&k))?)?;
    for e in closed.equilibria() {
        println!("decision equilibrium: {}", closed.strategies.element(e));
    }

    let f = GameFixture::from_json(FIXTURE)?;
    for v in Variant::ALL {
        let c = compare_two_player(&f, v)?;
        println!(
            "{} {v}: {} (oracle agrees: {})",
            f.name,
            c.described.join("; "),
            c.agrees()
        );
    }
    Ok(())
}
