//! Finite open games, tabulated.
//!
//! A game `(X, S) → (Y, R)` has a strategy set `Σ`, play `Σ × X → Y`,
//! coplay `Σ × X × R → S` and a best-response function taking a state
//! `x`, a context `k : Y → R` (a table) and a current profile to the set of
//! profiles that are best responses.

mod atoms;
mod oracle;
mod two_player;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::eval::{TeleologicalCategory, TeleologicalFunctor};
use crate::finset::{all_functions, FinSet};
use crate::lens::{is_adaptor, lens_counit, lens_dual, lens_id, lens_symmetry, FinLens, FinLensCategory, LensObject};

pub use atoms::{
    computation_contra, computation_cov, decision, equilibria, game_counit, lift_lens, scalar_of, ScalarGame,
};
pub use oracle::{oracle_nash, ClassicalGame, OracleResult};
pub use two_player::{
    build_two_player, compare_two_player, strategic_form, Comparison, GameFixture, Partition, TwoPlayer, Variant,
};

pub type BestResponse = Arc<dyn Fn(usize, &[usize], usize) -> Vec<usize> + Send + Sync>;

#[derive(Clone)]
pub struct FinGame {
    pub dom: LensObject,
    pub cod: LensObject,
    pub strategies: FinSet,
    /// `play[σ·|X| + x]`.
    pub play: Vec<usize>,
    /// `coplay[(σ·|X| + x)·|R| + r]`.
    pub coplay: Vec<usize>,
    best_response: BestResponse,
    /// A singleton strategy set whose best response always succeeds.
    pub trivial: bool,
}

impl fmt::Debug for FinGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGame")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("strategies", &self.strategies)
            .field("play", &self.play)
            .field("coplay", &self.coplay)
            .field("trivial", &self.trivial)
            .finish_non_exhaustive()
    }
}

impl FinGame {
    pub fn new(
        dom: LensObject,
        cod: LensObject,
        strategies: FinSet,
        play: Vec<usize>,
        coplay: Vec<usize>,
        best_response: BestResponse,
    ) -> Result<FinGame> {
        let (ns, nx) = (strategies.size(), dom.forward.size());
        let (ny, nr, nsb) = (cod.forward.size(), cod.backward.size(), dom.backward.size());
        if play.len() != ns * nx || play.iter().any(|&y| y >= ny) {
            return Err(Error::InvalidTable("play is not a total function Σ × X → Y".into()));
        }
        if coplay.len() != ns * nx * nr || coplay.iter().any(|&s| s >= nsb) {
            return Err(Error::InvalidTable(
                "coplay is not a total function Σ × X × R → S".into(),
            ));
        }
        Ok(FinGame {
            dom,
            cod,
            strategies,
            play,
            coplay,
            best_response,
            trivial: false,
        })
    }

    pub fn play_at(&self, sigma: usize, x: usize) -> usize {
        self.play[sigma * self.dom.forward.size() + x]
    }

    pub fn coplay_at(&self, sigma: usize, x: usize, r: usize) -> usize {
        self.coplay[(sigma * self.dom.forward.size() + x) * self.cod.backward.size() + r]
    }

    /// Sorted best responses to `sigma` at state `x` in context `k`.
    pub fn best_response(&self, x: usize, k: &[usize], sigma: usize) -> Vec<usize> {
        let mut out = (self.best_response)(x, k, sigma);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The underlying lens of a game with one strategy.
    pub fn as_lens(&self) -> Option<FinLens> {
        if !self.strategies.is_unit() {
            return None;
        }
        FinLens::new(
            self.dom.clone(),
            self.cod.clone(),
            self.play.clone(),
            self.coplay.clone(),
        )
        .ok()
    }
}

/// `G` then `H`. Strategies pair up; `G` sees the context obtained by
/// running `H`'s current strategy forward and its coplay back.
pub fn game_compose(g: &FinGame, h: &FinGame) -> Result<FinGame> {
    if g.cod != h.dom {
        return Err(Error::BoundaryMismatch(format!("{} vs {}", g.cod, h.dom)));
    }
    let (sg, sh) = (g.strategies.size(), h.strategies.size());
    let nx = g.dom.forward.size();
    let ny = g.cod.forward.size();
    let nq = h.cod.backward.size();
    let mut play = Vec::with_capacity(sg * sh * nx);
    let mut coplay = Vec::with_capacity(sg * sh * nx * nq);
    for s in 0..sg {
        for t in 0..sh {
            for x in 0..nx {
                let y = g.play_at(s, x);
                play.push(h.play_at(t, y));
                for q in 0..nq {
                    coplay.push(g.coplay_at(s, x, h.coplay_at(t, y, q)));
                }
            }
        }
    }
    let (g2, h2) = (Arc::new(g.clone()), Arc::new(h.clone()));
    let best: BestResponse = Arc::new(move |x, k, st| {
        let (s, t) = (st / sh, st % sh);
        let kg: Vec<usize> = (0..ny).map(|y| h2.coplay_at(t, y, k[h2.play_at(t, y)])).collect();
        let first = g2.best_response(x, &kg, s);
        let second = h2.best_response(g2.play_at(s, x), k, t);
        first
            .iter()
            .flat_map(|&a| second.iter().map(move |&b| a * sh + b))
            .collect()
    });
    Ok(FinGame {
        dom: g.dom.clone(),
        cod: h.cod.clone(),
        strategies: g.strategies.product(&h.strategies),
        play,
        coplay,
        best_response: best,
        trivial: g.trivial && h.trivial,
    })
}

/// Side by side. Each component is judged in the context obtained by fixing
/// the other component's current play.
pub fn game_tensor(g: &FinGame, h: &FinGame) -> FinGame {
    let (sg, sh) = (g.strategies.size(), h.strategies.size());
    let (nx, nx2) = (g.dom.forward.size(), h.dom.forward.size());
    let (ny2, nr, nr2) = (h.cod.forward.size(), g.cod.backward.size(), h.cod.backward.size());
    let ns2 = h.dom.backward.size();
    let ny = g.cod.forward.size();
    let mut play = Vec::new();
    let mut coplay = Vec::new();
    for s in 0..sg {
        for t in 0..sh {
            for x in 0..nx {
                for x2 in 0..nx2 {
                    play.push(g.play_at(s, x) * ny2 + h.play_at(t, x2));
                    for r in 0..nr {
                        for r2 in 0..nr2 {
                            coplay.push(g.coplay_at(s, x, r) * ns2 + h.coplay_at(t, x2, r2));
                        }
                    }
                }
            }
        }
    }
    let (g2, h2) = (Arc::new(g.clone()), Arc::new(h.clone()));
    let best: BestResponse = Arc::new(move |xx, k, st| {
        let (s, t) = (st / sh, st % sh);
        let (x, x2) = (xx / nx2, xx % nx2);
        let (y0, y20) = (g2.play_at(s, x), h2.play_at(t, x2));
        let kg: Vec<usize> = (0..ny).map(|y| k[y * ny2 + y20] / nr2).collect();
        let kh: Vec<usize> = (0..ny2).map(|y2| k[y0 * ny2 + y2] % nr2).collect();
        let first = g2.best_response(x, &kg, s);
        let second = h2.best_response(x2, &kh, t);
        first
            .iter()
            .flat_map(|&a| second.iter().map(move |&b| a * sh + b))
            .collect()
    });
    FinGame {
        dom: g.dom.tensor(&h.dom),
        cod: g.cod.tensor(&h.cod),
        strategies: g.strategies.product(&h.strategies),
        play,
        coplay,
        best_response: best,
        trivial: g.trivial && h.trivial,
    }
}

/// Tabulated best responses over every state, context and profile.
fn best_response_table(g: &FinGame) -> Vec<Vec<usize>> {
    let nx = g.dom.forward.size();
    let contexts = all_functions(g.cod.forward.size(), g.cod.backward.size());
    let mut out = Vec::new();
    for x in 0..nx {
        for k in &contexts {
            for s in 0..g.strategies.size() {
                out.push(g.best_response(x, k, s));
            }
        }
    }
    out
}

/// Equality up to a relabelling of strategies: the types agree and some
/// bijection of strategy sets commutes with play, coplay and best response.
/// Best responses are compared over every state and context unless both
/// games are strategically trivial.
pub fn game_eq(g: &FinGame, h: &FinGame) -> bool {
    if g.dom != h.dom || g.cod != h.cod || g.strategies.size() != h.strategies.size() {
        return false;
    }
    let n = g.strategies.size();
    let nx = g.dom.forward.size();
    let nr = g.cod.backward.size();
    let row = |game: &FinGame, s: usize| -> (Vec<usize>, Vec<usize>) {
        (
            game.play[s * nx..(s + 1) * nx].to_vec(),
            game.coplay[s * nx * nr..(s + 1) * nx * nr].to_vec(),
        )
    };
    let mut by_row: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for t in 0..n {
        by_row.entry(row(h, t)).or_default().push(t);
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|s| by_row.get(&row(g, s)).cloned().unwrap_or_default())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return false;
    }
    let check_best = !(g.trivial && h.trivial);
    let (tg, th) = if check_best {
        (best_response_table(g), best_response_table(h))
    } else {
        (Vec::new(), Vec::new())
    };
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, &candidates, &mut pi, &mut used, &mut |pi| {
        !check_best
            || tg.iter().zip(&th).enumerate().all(|(i, (bg, _))| {
                let s = i % n;
                let block = i - s;
                let mut mapped: Vec<usize> = bg.iter().map(|&b| pi[b]).collect();
                mapped.sort_unstable();
                mapped == th[block + pi[s]]
            })
    })
}

fn search(
    i: usize,
    candidates: &[Vec<usize>],
    pi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if i == candidates.len() {
        return accept(pi);
    }
    for &t in &candidates[i] {
        if !used[t] {
            used[t] = true;
            pi[i] = t;
            if search(i + 1, candidates, pi, used, accept) {
                return true;
            }
            used[t] = false;
        }
    }
    false
}

/// The open-games instance. Only strategically trivial games carrying an
/// adaptor have duals.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinGameCategory;

impl TeleologicalCategory for FinGameCategory {
    type Object = LensObject;
    type Morphism = FinGame;

    fn unit(&self) -> LensObject {
        LensObject::unit()
    }

    fn tensor_objects(&self, a: &LensObject, b: &LensObject) -> LensObject {
        a.tensor(b)
    }

    fn dual_object(&self, a: &LensObject) -> LensObject {
        a.dual()
    }

    fn dom(&self, f: &FinGame) -> LensObject {
        f.dom.clone()
    }

    fn cod(&self, f: &FinGame) -> LensObject {
        f.cod.clone()
    }

    fn identity(&self, a: &LensObject) -> FinGame {
        lift_lens(&lens_id(a))
    }

    fn compose(&self, f: &FinGame, g: &FinGame) -> Result<FinGame> {
        game_compose(f, g)
    }

    fn tensor(&self, f: &FinGame, g: &FinGame) -> FinGame {
        game_tensor(f, g)
    }

    fn symmetry(&self, a: &LensObject, b: &LensObject) -> FinGame {
        lift_lens(&lens_symmetry(a, b))
    }

    fn counit(&self, a: &LensObject) -> FinGame {
        lift_lens(&lens_counit(a))
    }

    fn dual(&self, f: &FinGame) -> Option<FinGame> {
        if !f.trivial {
            return None;
        }
        let l = f.as_lens()?;
        if !is_adaptor(&l) {
            return None;
        }
        lens_dual(&l).ok().map(|d| lift_lens(&d))
    }

    fn morphism_eq(&self, f: &FinGame, g: &FinGame) -> bool {
        game_eq(f, g)
    }
}

/// The embedding of lenses as strategically trivial games.
#[derive(Debug, Clone, Copy, Default)]
pub struct LiftLens;

impl TeleologicalFunctor<FinLensCategory, FinGameCategory> for LiftLens {
    fn map_object(&self, x: &LensObject) -> LensObject {
        x.clone()
    }

    fn map_morphism(&self, f: &FinLens) -> FinGame {
        lift_lens(f)
    }
}
