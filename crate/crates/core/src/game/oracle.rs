use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::FinSet;

/// A game in strategic form. Profiles are numbered row-major over the
/// players' strategy sets; `payoffs[profile][player]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalGame {
    pub players: Vec<String>,
    pub strategies: Vec<FinSet>,
    pub payoffs: Vec<Vec<Rational64>>,
}

impl ClassicalGame {
    pub fn new(players: Vec<String>, strategies: Vec<FinSet>, payoffs: Vec<Vec<Rational64>>) -> Result<Self> {
        let n: usize = strategies.iter().map(FinSet::size).product();
        if players.len() != strategies.len() {
            return Err(Error::InvalidTable("one strategy set per player".into()));
        }
        if payoffs.len() != n || payoffs.iter().any(|p| p.len() != players.len()) {
            return Err(Error::InvalidTable(format!(
                "expected {n} payoff vectors of length {}",
                players.len()
            )));
        }
        Ok(ClassicalGame {
            players,
            strategies,
            payoffs,
        })
    }

    pub fn profile_count(&self) -> usize {
        self.payoffs.len()
    }

    pub fn decode(&self, mut profile: usize) -> Vec<usize> {
        let mut out = vec![0; self.strategies.len()];
        for (i, s) in self.strategies.iter().enumerate().rev() {
            out[i] = profile % s.size();
            profile /= s.size();
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.strategies)
            .fold(0, |acc, (&c, s)| acc * s.size() + c)
    }

    /// A profile written as `player=strategy` pairs.
    pub fn describe(&self, profile: usize) -> String {
        let parts: Vec<String> = self
            .decode(profile)
            .iter()
            .zip(&self.players)
            .zip(&self.strategies)
            .map(|((&c, p), s)| format!("{p}={}", s.element(c)))
            .collect();
        parts.join(" ")
    }

    fn with(&self, profile: usize, player: usize, choice: usize) -> usize {
        let mut c = self.decode(profile);
        c[player] = choice;
        self.encode(&c)
    }

    fn best_replies(&self, profile: usize, player: usize) -> Vec<usize> {
        let n = self.strategies[player].size();
        let u = |c| self.payoffs[self.with(profile, player, c)][player];
        let top = (0..n).map(u).max().expect("nonempty strategy set");
        (0..n).filter(|&c| u(c) == top).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// Product of each player's best replies, per profile.
    pub best: Vec<Vec<usize>>,
    /// Fixed points of `best`.
    pub equilibria: Vec<usize>,
    /// Profiles no player can improve on alone.
    pub by_deviation: Vec<usize>,
}

impl OracleResult {
    pub fn consistent(&self) -> bool {
        self.equilibria == self.by_deviation
    }
}

/// Pure Nash equilibria by brute force, computed twice: as fixed points of
/// the best-reply correspondence and by checking every unilateral deviation.
pub fn oracle_nash(g: &ClassicalGame) -> OracleResult {
    let n = g.profile_count();
    let mut best = Vec::with_capacity(n);
    for p in 0..n {
        let mut acc = vec![Vec::new()];
        for i in 0..g.players.len() {
            let replies = g.best_replies(p, i);
            acc = acc
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    replies.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        let mut set: Vec<usize> = acc.iter().map(|c| g.encode(c)).collect();
        set.sort_unstable();
        best.push(set);
    }
    let equilibria = (0..n).filter(|&p| best[p].binary_search(&p).is_ok()).collect();
    let by_deviation = (0..n)
        .filter(|&p| {
            (0..g.players.len())
                .all(|i| (0..g.strategies[i].size()).all(|c| g.payoffs[g.with(p, i, c)][i] <= g.payoffs[p][i]))
        })
        .collect();
    OracleResult {
        best,
        equilibria,
        by_deviation,
    }
}
