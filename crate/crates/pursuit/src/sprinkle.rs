//! Randomized cop sprinkling: every vertex independently receives a cop
//! with probability p, resampled until the set is small (≤ 2pn) and the
//! guarded-ball property holds — every qualifying set S has at least |S|
//! cops inside its radius-r ball. Verification is exhaustive only up to an
//! explicit cap; the report always states what was certified.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Which ball guards a set: the plain/out-ball `B_r(S)`, or the in-ball
/// `B⁻_r(S)` used by the directed controller (cops must be able to reach S).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallKind {
    Out,
    In,
}

/// The guarded-ball property being verified. `Thresholded` only constrains
/// sets whose ball is large (|B_r(S)| ≥ (16/p)·|S|·log n); `All` constrains
/// every nonempty set up to the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GuardRule {
    Thresholded,
    All,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SprinkleReport {
    pub cops: Vec<usize>,
    pub attempts: usize,
    /// Exhaustively verified for all S with 1 ≤ |S| ≤ verified_cap.
    pub verified_cap: usize,
    pub ball: BallKind,
    pub rule: GuardRule,
    pub p: f64,
    pub r: usize,
}

impl SprinkleReport {
    pub fn cop_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.cops.iter().copied())
    }
}

#[derive(Debug, Error)]
pub enum SprinkleError {
    #[error("resample budget of {budget} attempts exhausted; best attempt had violation {violating:?}")]
    BudgetExhausted {
        budget: usize,
        /// Best (last failing) attempt and one of its violating sets.
        best: Vec<usize>,
        violating: Vec<usize>,
    },
}

fn ball_of(g: &Graph, s: &VertexSet, r: usize, kind: BallKind) -> VertexSet {
    match kind {
        BallKind::Out => g.ball(s, r),
        BallKind::In => {
            if g.is_directed() {
                g.ball_in(s, r)
            } else {
                g.ball(s, r)
            }
        }
    }
}

/// Exhaustive check of the guarded-ball property for all S up to `cap`;
/// returns a violating S on failure.
pub fn verify_guarded(
    g: &Graph,
    cops: &VertexSet,
    p: f64,
    r: usize,
    cap: usize,
    kind: BallKind,
    rule: GuardRule,
) -> Result<(), Vec<usize>> {
    let n = g.n();
    let threshold = |size: usize| (16.0 / p) * size as f64 * (n as f64).ln();
    // enumerate subsets of size 1..=cap
    let mut members: Vec<usize> = Vec::new();
    fn rec(
        g: &Graph,
        cops: &VertexSet,
        r: usize,
        cap: usize,
        kind: BallKind,
        rule: GuardRule,
        threshold: &dyn Fn(usize) -> f64,
        start: usize,
        members: &mut Vec<usize>,
    ) -> Result<(), Vec<usize>> {
        if !members.is_empty() {
            let s = VertexSet::from_iter(g.n(), members.iter().copied());
            let ball = ball_of(g, &s, r, kind);
            let qualifies = match rule {
                GuardRule::All => true,
                GuardRule::Thresholded => ball.len() as f64 >= threshold(members.len()),
            };
            if qualifies {
                let guards = cops.iter().filter(|&c| ball.contains(c)).count();
                if guards < members.len() {
                    return Err(members.clone());
                }
            }
        }
        if members.len() == cap {
            return Ok(());
        }
        for v in start..g.n() {
            members.push(v);
            rec(g, cops, r, cap, kind, rule, threshold, v + 1, members)?;
            members.pop();
        }
        Ok(())
    }
    rec(g, cops, r, cap, kind, rule, &threshold, 0, &mut members)
}

/// Samples a verified placement. Deterministic per seed; the resample
/// budget is fixed at 1000 attempts.
pub fn sprinkle(
    g: &Graph,
    p: f64,
    r: usize,
    seed: u64,
    verify_cap: usize,
    kind: BallKind,
    rule: GuardRule,
) -> Result<SprinkleReport, SprinkleError> {
    assert!(p > 0.0 && p < 1.0, "p must lie in (0,1)");
    let n = g.n();
    let budget = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
    for attempt in 1..=budget {
        let cops: Vec<usize> = (0..n).filter(|_| rng.gen::<f64>() < p).collect();
        if cops.len() as f64 > 2.0 * p * n as f64 + 1e-9 {
            continue;
        }
        let set = VertexSet::from_iter(n, cops.iter().copied());
        match verify_guarded(g, &set, p, r, verify_cap, kind, rule) {
            Ok(()) => {
                return Ok(SprinkleReport {
                    cops,
                    attempts: attempt,
                    verified_cap: verify_cap,
                    ball: kind,
                    rule,
                    p,
                    r,
                })
            }
            Err(violating) => best = (cops, violating),
        }
    }
    Err(SprinkleError::BudgetExhausted {
        budget,
        best: best.0,
        violating: best.1,
    })
}
