//! Exact game solving by backward induction.
//!
//! The full state space (sorted cop multiset × robber vertex × mover flag)
//! is materialized and the cop-win set is computed as the attractor of the
//! capture states: a cop-to-move state wins if SOME cop decision reaches a
//! win, a robber-to-move state wins if ALL robber decisions reach wins.
//! Ranks count cop moves to capture under optimal play and drive the
//! optimal controllers extracted from the fixpoint.

use std::collections::HashMap;

use thiserror::Error;

use crate::game::{
    canonical_cops, cop_moves_from, robber_moves_from, CopController, GameConfig, GameState,
    RobberController, Speed,
};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("state space of {states} states exceeds budget {budget}")]
    Budget { states: usize, budget: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// Default state-space budget (number of (multiset, robber, mover) states).
pub const DEFAULT_BUDGET: usize = 20_000_000;

const UNRANKED: u32 = u32::MAX;

/// Fixpoint of one `(G, c, speed)` solve; the raw material for optimal
/// controllers and for `SolveResult`.
#[derive(Clone)]
pub struct Solved {
    pub cop_count: usize,
    pub speed: Speed,
    pub cops_win: bool,
    /// Lexicographically smallest placement minimizing worst-case capture
    /// rounds; `None` when the cops lose.
    pub placement: Option<Vec<usize>>,
    /// Max cop moves to capture from the winning placement under optimal play.
    pub capture_bound: Option<usize>,
    multisets: Vec<Vec<usize>>,
    ms_index: HashMap<Vec<usize>, usize>,
    n: usize,
    win: Vec<bool>,
    rank: Vec<u32>,
}

impl Solved {
    fn idx(&self, ms: usize, robber: usize, robber_to_move: bool) -> usize {
        (ms * self.n + robber) * 2 + robber_to_move as usize
    }

    fn ms_of(&self, cops: &[usize]) -> usize {
        *self
            .ms_index
            .get(&canonical_cops(cops.to_vec()))
            .expect("cop multiset of the configured size")
    }

    /// Whether the cops (to move) win from this configuration.
    pub fn cop_win_state(&self, cops: &[usize], robber: usize, robber_to_move: bool) -> bool {
        if canonical_cops(cops.to_vec()).binary_search(&robber).is_ok() {
            return true;
        }
        self.win[self.idx(self.ms_of(cops), robber, robber_to_move)]
    }

    /// Cop moves to capture under optimal play; `None` if the robber wins.
    pub fn state_rank(&self, cops: &[usize], robber: usize, robber_to_move: bool) -> Option<usize> {
        if canonical_cops(cops.to_vec()).binary_search(&robber).is_ok() {
            return Some(0);
        }
        let i = self.idx(self.ms_of(cops), robber, robber_to_move);
        self.win[i].then_some(self.rank[i] as usize)
    }

    /// Optimal cop decision: the move minimizing the successor rank when the
    /// state is winning (ties broken by lexicographically smallest multiset),
    /// staying put otherwise.
    pub fn cop_decision(&self, g: &Graph, cops: &[usize], robber: usize) -> Vec<usize> {
        let moves = cop_moves_from(g, cops).expect("valid cop positions");
        let mut best: Option<(usize, &Vec<usize>)> = None;
        for m in &moves {
            let r = if m.binary_search(&robber).is_ok() {
                Some(0)
            } else {
                let i = self.idx(self.ms_of(m), robber, true);
                self.win[i].then_some(self.rank[i] as usize)
            };
            if let Some(r) = r {
                if best.map_or(true, |(br, _)| r < br) {
                    best = Some((r, m));
                }
            }
        }
        match best {
            Some((_, m)) => m.clone(),
            None => cops.to_vec(),
        }
    }

    /// Optimal robber decision: a surviving successor if one exists,
    /// otherwise the one maximizing capture rank. Ties break to the
    /// smallest vertex.
    pub fn robber_decision(&self, g: &Graph, cops: &[usize], robber: usize) -> usize {
        let cops = canonical_cops(cops.to_vec());
        let mut best = (0usize, robber); // (rank, vertex); rank usize::MAX-ish for survive
        let mut found = false;
        for v in robber_moves_from(g, &cops, robber, self.speed) {
            let i = self.idx(self.ms_of(&cops), v, false);
            let score = if self.win[i] { self.rank[i] as usize } else { usize::MAX };
            if !found || score > best.0 {
                best = (score, v);
                found = true;
            }
        }
        best.1
    }

    /// Export of the optimal decision table over all winning cop-to-move
    /// states, keyed by `(cops, robber)`.
    pub fn strategy_table(&self, g: &Graph) -> Vec<(Vec<usize>, usize, Vec<usize>)> {
        let mut out = Vec::new();
        for (mi, ms) in self.multisets.iter().enumerate() {
            for robber in 0..self.n {
                if ms.binary_search(&robber).is_ok() {
                    continue;
                }
                if self.win[self.idx(mi, robber, false)] {
                    out.push((ms.clone(), robber, self.cop_decision(g, ms, robber)));
                }
            }
        }
        out
    }
}

/// All sorted multisets of `c` elements from `0..n`, lexicographic.
fn multisets(n: usize, c: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; c];
    loop {
        out.push(cur.clone());
        // next multiset
        let mut i = c;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - 1 {
                let v = cur[i] + 1;
                for x in cur.iter_mut().skip(i) {
                    *x = v;
                }
                break;
            }
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r.min(usize::MAX as u128) as usize
}

/// Decides whether `c` cops win on `G` and returns the solved fixpoint.
pub fn cops_win(g: &Graph, c: usize, speed: Speed, budget: usize) -> Result<Solved, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    assert!(c >= 1);
    let m_count = binom(n + c - 1, c);
    let state_count = m_count.saturating_mul(n).saturating_mul(2);
    if state_count > budget {
        return Err(SolveError::Budget {
            states: state_count,
            budget,
        });
    }

    let ms = multisets(n, c);
    let ms_index: HashMap<Vec<usize>, usize> =
        ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let rev = g.reversed();

    let idx = |mi: usize, robber: usize, robber_to_move: bool| {
        (mi * n + robber) * 2 + robber_to_move as usize
    };

    let mut win = vec![false; state_count];
    let mut rank = vec![UNRANKED; state_count];
    // Robber-to-move states need all successors winning; count escapes.
    let mut pending = vec![0u32; state_count];

    // Bucket queue by rank; buckets[r] holds winning states confirmed at rank r.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new()];

    for (mi, cops) in ms.iter().enumerate() {
        for robber in 0..n {
            if cops.binary_search(&robber).is_ok() {
                continue; // capture configurations are terminal, not states
            }
            // cop-to-move: immediate capture iff some cop has an edge to the robber
            let immediate = cops
                .iter()
                .any(|&cv| g.has_edge(cv, robber));
            let ci = idx(mi, robber, false);
            if immediate {
                win[ci] = true;
                rank[ci] = 1;
            }
            let ri = idx(mi, robber, true);
            pending[ri] = robber_moves_from(g, cops, robber, speed).len() as u32;
        }
    }
    // seed buckets: rank-1 cop states
    buckets.push(Vec::new());
    for (i, &w) in win.iter().enumerate() {
        if w {
            buckets[1].push(i);
        }
    }

    let mut r = 0usize;
    while r < buckets.len() {
        let mut qi = 0;
        while qi < buckets[r].len() {
            let s = buckets[r][qi];
            qi += 1;
            let robber_to_move = s % 2 == 1;
            let robber = (s / 2) % n;
            let mi = s / 2 / n;
            if robber_to_move {
                // predecessors: cop-to-move states (same ms/robber set) whose
                // cop move reaches this multiset — i.e. one reversed move away
                for pm in cop_moves_from(&rev, &ms[mi]).expect("valid positions") {
                    if pm.binary_search(&robber).is_ok() {
                        continue;
                    }
                    let p = idx(ms_index[&pm], robber, false);
                    if !win[p] {
                        win[p] = true;
                        rank[p] = (r + 1) as u32;
                        if buckets.len() <= r + 1 {
                            buckets.resize(r + 2, Vec::new());
                        }
                        buckets[r + 1].push(p);
                    }
                }
            } else {
                // predecessors: robber-to-move states with a walk into `robber`
                // — a reversed cop-free walk enumerates the origins
                for r0 in robber_moves_from(&rev, &ms[mi], robber, speed) {
                    let p = idx(mi, r0, true);
                    debug_assert!(pending[p] > 0);
                    pending[p] -= 1;
                    if pending[p] == 0 && !win[p] {
                        win[p] = true;
                        rank[p] = r as u32;
                        buckets[r].push(p);
                    }
                }
            }
        }
        r += 1;
    }

    // Placement: for each multiset, cops win iff every robber placement
    // outside it is winning; worst-case rank is the capture bound.
    let mut best: Option<(usize, usize)> = None; // (bound, ms index)
    for (mi, cops) in ms.iter().enumerate() {
        let mut bound = 0usize;
        let mut ok = true;
        for robber in 0..n {
            if cops.binary_search(&robber).is_ok() {
                continue;
            }
            let i = idx(mi, robber, false);
            if win[i] {
                bound = bound.max(rank[i] as usize);
            } else {
                ok = false;
                break;
            }
        }
        if ok && best.map_or(true, |(bb, _)| bound < bb) {
            best = Some((bound, mi));
        }
    }

    Ok(Solved {
        cop_count: c,
        speed,
        cops_win: best.is_some(),
        placement: best.map(|(_, mi)| ms[mi].clone()),
        capture_bound: best.map(|(b, _)| b),
        multisets: ms,
        ms_index,
        n,
        win,
        rank,
    })
}

/// Cop number of one connected (or weakly connected) piece together with
/// the aggregate over a disconnected graph.
#[derive(Debug)]
pub struct SolveResult {
    pub cop_number: usize,
    /// A winning placement on the full vertex set.
    pub placement: Vec<usize>,
    /// Max cop moves to capture under optimal play (max over components).
    pub capture_bound: usize,
}

/// Smallest `c` with a cop win, by ascending search from 1. Disconnected
/// inputs are solved per (weakly) connected component and summed.
pub fn cop_number(g: &Graph, speed: Speed, budget: usize) -> Result<SolveResult, SolveError> {
    let comps = if g.is_directed() {
        weak_components(g)
    } else {
        g.components().expect("undirected")
    };
    let mut total = 0usize;
    let mut placement = Vec::new();
    let mut bound = 0usize;
    for comp in comps {
        let (sub, ids) = g.induced(&comp);
        let solved = cop_number_connected(&sub, speed, budget)?;
        total += solved.cop_count;
        bound = bound.max(solved.capture_bound.unwrap());
        placement.extend(solved.placement.unwrap().iter().map(|&v| ids[v]));
    }
    placement.sort_unstable();
    Ok(SolveResult {
        cop_number: total,
        placement,
        capture_bound: bound,
    })
}

/// Ascending-c search on a connected piece; returns the winning fixpoint.
pub fn cop_number_connected(g: &Graph, speed: Speed, budget: usize) -> Result<Solved, SolveError> {
    for c in 1..=g.n() {
        let solved = cops_win(g, c, speed, budget)?;
        if solved.cops_win {
            return Ok(solved);
        }
    }
    unreachable!("n cops always win: one per vertex")
}

pub(crate) fn weak_components(g: &Graph) -> Vec<crate::graph::VertexSet> {
    // underlying undirected components
    let mut und = Graph::undirected(g.n());
    for (u, v) in g.edges() {
        und.add_edge(u, v).unwrap();
    }
    und.components().expect("undirected")
}

/// Plays the solver's optimal cop policy; requires a winning fixpoint for
/// the configured cop count (falls back to staying put in losing states).
pub struct OptimalCop {
    solved: Solved,
}

impl OptimalCop {
    pub fn new(solved: Solved) -> Self {
        OptimalCop { solved }
    }
}

impl CopController for OptimalCop {
    fn place(&mut self, g: &Graph, _cfg: &GameConfig) -> Vec<usize> {
        self.solved
            .placement
            .clone()
            .unwrap_or_else(|| vec![0; self.solved.cop_count.min(g.n())])
    }
    fn mv(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState, _round: usize) -> Vec<usize> {
        self.solved
            .cop_decision(g, &s.cops, s.robber.expect("robber placed"))
    }
    fn name(&self) -> &'static str {
        "optimal"
    }
}

/// Plays the capture-delaying / evading policy from the fixpoint: survives
/// forever when the robber wins game-theoretically, otherwise maximizes the
/// capture round.
pub struct OptimalRobber {
    solved: Solved,
}

impl OptimalRobber {
    pub fn new(solved: Solved) -> Self {
        OptimalRobber { solved }
    }

    /// Solves the fixpoint for the arena's cop count up front.
    pub fn for_game(g: &Graph, cfg: &GameConfig, budget: usize) -> Result<Self, SolveError> {
        Ok(OptimalRobber {
            solved: cops_win(g, cfg.cop_count, cfg.speed, budget)?,
        })
    }
}

impl RobberController for OptimalRobber {
    fn place(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState) -> Option<usize> {
        // best placement: a losing (for cops) cop-to-move state if any,
        // otherwise the max-rank one
        let mut best: Option<(usize, usize)> = None;
        for v in 0..g.n() {
            if s.cop_occupied(v) {
                continue;
            }
            let score = self
                .solved
                .state_rank(&s.cops, v, false)
                .unwrap_or(usize::MAX);
            if best.map_or(true, |(bs, _)| score > bs) {
                best = Some((score, v));
            }
        }
        // every vertex cop-occupied: place anywhere (captured immediately)
        Some(best.map_or(0, |(_, v)| v))
    }
    fn mv(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState, _round: usize) -> Option<usize> {
        Some(
            self.solved
                .robber_decision(g, &s.cops, s.robber.expect("robber placed")),
        )
    }
    fn name(&self) -> &'static str {
        "optimal"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, Outcome};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, false, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, false, &e).unwrap()
    }

    /// Independent oracle: naive Zermelo iteration with full sweeps until
    /// fixpoint, using only the public move generators.
    pub(crate) fn naive_cops_win(g: &Graph, c: usize, speed: Speed) -> bool {
        use std::collections::HashSet;
        let n = g.n();
        let ms = multisets(n, c);
        let mut winning: HashSet<(usize, usize, bool)> = HashSet::new();
        // state key: (ms index, robber, robber_to_move); capture handled inline
        loop {
            let mut changed = false;
            for (mi, cops) in ms.iter().enumerate() {
                for robber in 0..n {
                    if cops.binary_search(&robber).is_ok() {
                        continue;
                    }
                    // cop to move
                    if !winning.contains(&(mi, robber, false)) {
                        let some_win = cop_moves_from(g, cops).unwrap().iter().any(|m| {
                            m.binary_search(&robber).is_ok()
                                || winning.contains(&(
                                    ms.iter().position(|x| x == m).unwrap(),
                                    robber,
                                    true,
                                ))
                        });
                        if some_win {
                            winning.insert((mi, robber, false));
                            changed = true;
                        }
                    }
                    // robber to move
                    if !winning.contains(&(mi, robber, true)) {
                        let all_win = robber_moves_from(g, cops, robber, speed)
                            .iter()
                            .all(|&v| winning.contains(&(mi, v, false)));
                        if all_win {
                            winning.insert((mi, robber, true));
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        ms.iter().enumerate().any(|(mi, cops)| {
            (0..n)
                .filter(|v| cops.binary_search(v).is_err())
                .all(|v| winning.contains(&(mi, v, false)))
        })
    }

    #[test]
    fn paths_and_cycles() {
        for n in 2..6 {
            let s = cops_win(&path(n), 1, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
            assert!(s.cops_win, "1 cop wins on P{}", n);
        }
        assert!(!cops_win(&cycle(4), 1, Speed::Finite(1), DEFAULT_BUDGET).unwrap().cops_win);
        assert!(cops_win(&cycle(4), 2, Speed::Finite(1), DEFAULT_BUDGET).unwrap().cops_win);
        assert!(!cops_win(&cycle(6), 1, Speed::Infinite, DEFAULT_BUDGET).unwrap().cops_win);
    }

    #[test]
    fn directed_cycle_needs_two() {
        let c3 = Graph::from_edges(3, true, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cops_win(&c3, 1, Speed::Finite(1), DEFAULT_BUDGET).unwrap().cops_win);
        assert!(cops_win(&c3, 2, Speed::Finite(1), DEFAULT_BUDGET).unwrap().cops_win);
    }

    #[test]
    fn petersen_cop_number_three() {
        let pet = crate::lab::petersen();
        let r = cop_number(&pet, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.cop_number, 3);
    }

    #[test]
    fn matches_naive_oracle() {
        let graphs: Vec<Graph> = vec![
            path(4),
            cycle(4),
            cycle(5),
            Graph::from_edges(4, false, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
            Graph::from_edges(4, true, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
            Graph::from_edges(5, true, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
        ];
        for g in &graphs {
            for c in 1..=2 {
                for speed in [Speed::Finite(1), Speed::Finite(2), Speed::Infinite] {
                    let fast = cops_win(g, c, speed, DEFAULT_BUDGET).unwrap().cops_win;
                    let naive = naive_cops_win(g, c, speed);
                    assert_eq!(fast, naive, "disagreement on {:?} c={} {:?}", g, c, speed);
                }
            }
        }
    }

    #[test]
    fn disconnected_sums() {
        // P3 + C4 needs 1 + 2 cops
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend([(3, 4), (4, 5), (5, 6), (6, 3)]);
        let g = Graph::from_edges(7, false, &edges).unwrap();
        let r = cop_number(&g, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.cop_number, 3);
        assert_eq!(r.placement.len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let g = path(10);
        assert!(matches!(
            cops_win(&g, 3, Speed::Finite(1), 100),
            Err(SolveError::Budget { .. })
        ));
    }

    #[test]
    fn optimal_play_respects_capture_bound() {
        for g in [path(5), cycle(5), crate::lab::petersen()] {
            let solved = cop_number_connected(&g, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
            let bound = solved.capture_bound.unwrap();
            let cfg = GameConfig::new(solved.cop_count, Speed::Finite(1), false);
            let robber = cops_win(&g, solved.cop_count, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
            let mut cop = OptimalCop::new(solved);
            let mut rob = OptimalRobber::new(robber);
            let trace = play(&g, &cfg, &mut cop, &mut rob, bound + 1, 0);
            match trace.outcome {
                Outcome::CapturedAtRound(r) => assert!(r <= bound, "capture at {} > bound {}", r, bound),
                other => panic!("expected capture within {}, got {:?}", bound, other),
            }
            assert!(trace.replays(&g, &cfg));
        }
    }

    #[test]
    fn optimal_robber_survives_on_c4() {
        let g = cycle(4);
        let cfg = GameConfig::new(1, Speed::Finite(1), false);
        let solved = cops_win(&g, 1, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
        assert!(!solved.cops_win);
        let cop_view = cops_win(&g, 1, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
        let mut cop = OptimalCop::new(cop_view);
        let mut rob = OptimalRobber::new(solved);
        let trace = play(&g, &cfg, &mut cop, &mut rob, 200, 0);
        assert!(matches!(trace.outcome, Outcome::SurvivedHorizon(_)));
    }

    #[test]
    fn tree_capture_bound_matches_playout() {
        // spider: three legs of length 2 from center 0
        let g = Graph::from_edges(7, false, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
            .unwrap();
        let solved = cop_number_connected(&g, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(solved.cop_count, 1);
        let bound = solved.capture_bound.unwrap();
        let cfg = GameConfig::new(1, Speed::Finite(1), false);
        let robber = cops_win(&g, 1, Speed::Finite(1), DEFAULT_BUDGET).unwrap();
        let mut cop = OptimalCop::new(solved);
        let mut rob = OptimalRobber::new(robber);
        let trace = play(&g, &cfg, &mut cop, &mut rob, bound + 5, 0);
        assert_eq!(trace.outcome, Outcome::CapturedAtRound(bound));
    }
}
