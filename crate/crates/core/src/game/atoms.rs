use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;

use super::{BestResponse, FinGame};
use crate::error::{Error, Result};
use crate::finset::{exponential, FinSet};
use crate::lens::{adaptor, lens_counit, FinLens, LensObject};

/// A lens as a game with one strategy that is always a best response.
pub fn lift_lens(l: &FinLens) -> FinGame {
    let best: BestResponse = Arc::new(|_, _, _| vec![0]);
    FinGame {
        dom: l.dom.clone(),
        cod: l.cod.clone(),
        strategies: FinSet::unit(),
        play: l.view.clone(),
        coplay: l.update.clone(),
        best_response: best,
        trivial: true,
    }
}

/// The covariant computation `(X, 1) → (Y, 1)` of a function `f : X → Y`.
pub fn computation_cov(x: &FinSet, y: &FinSet, f: &[usize]) -> Result<FinGame> {
    let l = adaptor(
        &LensObject::new(x.clone(), FinSet::unit()),
        &LensObject::new(y.clone(), FinSet::unit()),
        f,
        &[0],
    )?;
    Ok(lift_lens(&l))
}

/// The contravariant computation `(1, Y) → (1, X)` of `f : X → Y`, the dual
/// of the covariant one.
pub fn computation_contra(x: &FinSet, y: &FinSet, f: &[usize]) -> Result<FinGame> {
    let l = adaptor(
        &LensObject::new(FinSet::unit(), y.clone()),
        &LensObject::new(FinSet::unit(), x.clone()),
        &[0],
        f,
    )?;
    Ok(lift_lens(&l))
}

pub fn game_counit(o: &LensObject) -> FinGame {
    lift_lens(&lens_counit(o))
}

/// A player `(X, 1) → (Y, P)` choosing `y` from an observed `x`, with
/// strategies the tables `X → Y` and utility `values[p]` for payoff `p`.
///
/// A strategy is a best response when its choice at the observed state
/// maximises utility in the given context; choices at other states are free.
pub fn decision(name: &str, x: &FinSet, y: &FinSet, payoffs: &FinSet, values: &[Rational64]) -> Result<FinGame> {
    if values.len() != payoffs.size() {
        return Err(Error::InvalidTable(format!(
            "decision {name} needs {} utilities, got {}",
            payoffs.size(),
            values.len()
        )));
    }
    let strategies = exponential(name, x, y);
    let (nx, ny) = (x.size(), y.size());
    let digit = move |s: usize, i: usize| s / ny.pow((nx - 1 - i) as u32) % ny;
    let n = strategies.size();
    let mut play = Vec::with_capacity(n * nx);
    for s in 0..n {
        for i in 0..nx {
            play.push(digit(s, i));
        }
    }
    let coplay = vec![0; n * nx * payoffs.size()];
    let values = values.to_vec();
    let best: BestResponse = Arc::new(move |i, k, _| {
        let utility = |c: usize| values[k[c]];
        let top = (0..ny).map(utility).max().expect("nonempty choice set");
        (0..n).filter(|&s| utility(digit(s, i)) == top).collect()
    });
    let mut g = FinGame::new(
        LensObject::new(x.clone(), FinSet::unit()),
        LensObject::new(y.clone(), payoffs.clone()),
        strategies,
        play,
        coplay,
        best,
    )?;
    g.trivial = false;
    Ok(g)
}

/// A closed game `I → I`, reduced to its best-response correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarGame {
    pub strategies: FinSet,
    /// `best[σ]`, sorted.
    pub best: Vec<Vec<usize>>,
}

impl ScalarGame {
    /// Profiles that are best responses to themselves.
    pub fn equilibria(&self) -> Vec<usize> {
        equilibria(self)
    }
}

pub fn scalar_of(g: &FinGame) -> Result<ScalarGame> {
    if !g.dom.forward.is_unit() || !g.dom.backward.is_unit() || !g.cod.forward.is_unit() || !g.cod.backward.is_unit() {
        return Err(Error::NotAScalar(format!("{} → {}", g.dom, g.cod)));
    }
    let best = (0..g.strategies.size()).map(|s| g.best_response(0, &[0], s)).collect();
    Ok(ScalarGame {
        strategies: g.strategies.clone(),
        best,
    })
}

pub fn equilibria(s: &ScalarGame) -> Vec<usize> {
    (0..s.best.len())
        .filter(|&i| s.best[i].binary_search(&i).is_ok())
        .collect()
}
