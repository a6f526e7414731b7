//! Cop controllers built from the expansion machinery (general, fast-robber
//! and digraph variants) plus simple baselines (greedy, random, parked) and
//! baseline robbers.
//!
//! The staged controllers confine the robber with possible-position
//! bookkeeping: N₀ is what the robber can reach after his first move, stage
//! i splits Nᵢ into a deficient part Sᵢ (kept, Nᵢ₊₁ = B_rᵢ(Sᵢ)) and a
//! healthy part Tᵢ whose vertices get permanently occupied by a routed cop
//! group. Expansion forces S = ∅ within l stages, at which point the final
//! group covers every possible position and the robber is caught.
//!
//! Every declared invariant (|Nᵢ| bounds, S_l = ∅, Hall routability,
//! capture by deadline) is checked at runtime; a violation ABORTS the
//! playout with the violated bound recorded — never a silent wrong game.
//! Run these controllers through [`play_staged`] to observe aborts.

use std::collections::VecDeque;

use thiserror::Error;

use crate::game::{play, CopController, GameConfig, GameState, RobberController, Trace};
use crate::graph::{Graph, VertexSet};
use crate::hall::{hall_route, split_hall};
use crate::params::{self, ExpansionParams};
use crate::sprinkle::{sprinkle, BallKind, GuardRule, SprinkleError, SprinkleReport};

#[derive(Debug, Error)]
pub enum ControllerError {
    #[error("parameters infeasible and no override supplied: {0}")]
    InfeasibleParams(#[from] params::ParamError),
    #[error(transparent)]
    Sprinkle(#[from] SprinkleError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Explicit desk-scale parameters; bypasses the asymptotic solvers, which
/// are infeasible at any graph size that fits in memory.
#[derive(Debug, Clone)]
pub struct Override {
    pub p: f64,
    pub k: f64,
    /// Number of stages minus one; radii.len() must be l+1.
    pub l: usize,
    pub radii: Vec<usize>,
    pub verify_cap: usize,
}

#[derive(Debug, Clone)]
pub struct BudgetReport {
    /// Declared budget: (l+1)·⌈2pn⌉ (+ 2Rpn for the fast controller).
    pub declared: usize,
    /// Cops actually placed.
    pub used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    General,
    Fast { speed: usize },
    Digraph { radius: usize },
}

/// One routed cop: index into the controller's position vector plus the
/// remaining path (front = next vertex).
struct Route {
    cop: usize,
    path: VecDeque<usize>,
}

enum Mode {
    /// Waiting for the robber's placement (first mv call plans everything).
    Unplanned,
    Dispatching,
    Aborted,
}

pub struct StagedCop {
    kind: Kind,
    p: f64,
    k: f64,
    radii: Vec<usize>,
    /// cop groups as index ranges into `positions` (stage groups only).
    groups: Vec<Vec<usize>>,
    /// degree-guard groups C_1..C_R (fast controller), cops per U-vertex.
    guard_groups: Vec<Vec<usize>>,
    positions: Vec<usize>,
    pub budget: BudgetReport,
    mode: Mode,
    routes: Vec<Route>,
    /// Round by which capture must have happened (set during planning).
    capture_deadline: usize,
    plan_round: usize,
    pub abort: Option<String>,
    /// (stage, |N_i|, bound) bookkeeping for reports/tests.
    pub stage_log: Vec<(usize, usize, f64)>,
}

fn shortest_path(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    // path EXCLUDING `from`, following directed edges from -> to
    if from == to {
        return Some(vec![]);
    }
    let mut prev = vec![usize::MAX; g.n()];
    let mut q = VecDeque::from([from]);
    prev[from] = from;
    while let Some(u) = q.pop_front() {
        for &v in g.neighbors(u) {
            if prev[v] == usize::MAX {
                prev[v] = u;
                if v == to {
                    let mut path = vec![to];
                    let mut cur = to;
                    while prev[cur] != from {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                q.push_back(v);
            }
        }
    }
    None
}

fn dist_ball_adjacency(g: &Graph, a: &[usize], r: usize) -> Vec<Vec<usize>> {
    // bipartite adjacency: a-element ~ every vertex within distance r
    a.iter()
        .map(|&v| {
            let mut s = VertexSet::new(g.n());
            s.insert(v);
            g.ball(&s, r).to_vec()
        })
        .collect()
}

impl StagedCop {
    pub fn general(
        g: &Graph,
        ov: Option<Override>,
        seed: u64,
    ) -> Result<Self, ControllerError> {
        let ov = Self::resolve_override(g, ov, |l| params::solve_general(l))?;
        Self::build(g, Kind::General, ov, seed, GuardRule::Thresholded, BallKind::Out)
    }

    pub fn fast(
        g: &Graph,
        speed: usize,
        ov: Option<Override>,
        seed: u64,
    ) -> Result<Self, ControllerError> {
        let ov = Self::resolve_override(g, ov, |l| params::solve_fast(l, speed))?;
        let mut c = Self::build(
            g,
            Kind::Fast { speed },
            ov,
            seed,
            GuardRule::Thresholded,
            BallKind::Out,
        )?;
        c.build_guards(g, speed, seed)?;
        Ok(c)
    }

    pub fn digraph(
        g: &Graph,
        radius: usize,
        ov: Option<Override>,
        seed: u64,
    ) -> Result<Self, ControllerError> {
        if !g.is_directed() {
            return Err(ControllerError::Precondition(
                "digraph controller requires a directed graph".into(),
            ));
        }
        let ov = Self::resolve_override(g, ov, |l| params::solve_digraph(l))?;
        let n = g.n();
        let budget = (2.0 * ov.p * n as f64).ceil() as usize;
        // Degenerate residual: if the budget covers every vertex, park a cop
        // on each one — the robber cannot even place.
        if budget >= n {
            return Ok(StagedCop {
                kind: Kind::Digraph { radius },
                p: ov.p,
                k: ov.k,
                radii: vec![radius],
                groups: vec![(0..n).collect()],
                guard_groups: vec![],
                positions: (0..n).collect(),
                budget: BudgetReport { declared: budget.max(n), used: n },
                mode: Mode::Unplanned,
                routes: vec![],
                capture_deadline: 1,
                plan_round: 0,
                abort: None,
                stage_log: vec![],
            });
        }
        let rep = sprinkle(g, ov.p, radius, seed, ov.verify_cap, BallKind::In, GuardRule::All)?;
        let positions = rep.cops.clone();
        let used = positions.len();
        Ok(StagedCop {
            kind: Kind::Digraph { radius },
            p: ov.p,
            k: ov.k,
            radii: vec![radius],
            groups: vec![(0..used).collect()],
            guard_groups: vec![],
            positions,
            budget: BudgetReport { declared: budget, used },
            mode: Mode::Unplanned,
            routes: vec![],
            capture_deadline: 0,
            plan_round: 0,
            abort: None,
            stage_log: vec![],
        })
    }

    fn resolve_override(
        g: &Graph,
        ov: Option<Override>,
        solve: impl Fn(f64) -> Result<ExpansionParams, params::ParamError>,
    ) -> Result<Override, ControllerError> {
        match ov {
            Some(o) => {
                if o.radii.len() != o.l + 1 && !o.radii.is_empty() {
                    return Err(ControllerError::Precondition(format!(
                        "override needs l+1 = {} radii, got {}",
                        o.l + 1,
                        o.radii.len()
                    )));
                }
                Ok(o)
            }
            None => {
                // No override: the asymptotic parameters must be feasible at
                // this n AND representable; reject loudly otherwise. The
                // documented fallback is the trivial n-cop bound, not this
                // controller.
                let prm = solve((g.n().max(2) as f64).ln())?;
                if prm.margins[0] < 0.0 || prm.margins[1] < 0.0 || prm.p == 0.0 {
                    return Err(ControllerError::Precondition(
                        "solved parameters have negative margin or underflow at this n".into(),
                    ));
                }
                let l = prm.l.unwrap_or(0) as usize;
                let radii: Vec<usize> = prm.radii_prefix.iter().map(|&r| r as usize).collect();
                if radii.len() < l + 1 {
                    return Err(ControllerError::Precondition(
                        "parameter radii do not fit in machine range".into(),
                    ));
                }
                Ok(Override {
                    p: prm.p,
                    k: prm.ln_k.exp(),
                    l,
                    radii: radii[..=l].to_vec(),
                    verify_cap: 3,
                })
            }
        }
    }

    fn build(
        g: &Graph,
        kind: Kind,
        ov: Override,
        seed: u64,
        rule: GuardRule,
        ball: BallKind,
    ) -> Result<Self, ControllerError> {
        let n = g.n();
        let group_budget = (2.0 * ov.p * n as f64).ceil() as usize;
        let mut groups = Vec::new();
        let mut positions = Vec::new();
        let mut reports: Vec<SprinkleReport> = Vec::new();
        for (i, &r) in ov.radii.iter().enumerate() {
            let rep = sprinkle(g, ov.p, r, seed.wrapping_add(i as u64), ov.verify_cap, ball, rule)?;
            let idx = (positions.len()..positions.len() + rep.cops.len()).collect();
            positions.extend_from_slice(&rep.cops);
            groups.push(idx);
            reports.push(rep);
        }
        let declared = (ov.l + 1) * group_budget;
        let used = positions.len();
        Ok(StagedCop {
            kind,
            p: ov.p,
            k: ov.k,
            radii: ov.radii,
            groups,
            guard_groups: vec![],
            positions,
            budget: BudgetReport { declared, used },
            mode: Mode::Unplanned,
            routes: vec![],
            capture_deadline: 0,
            plan_round: 0,
            abort: None,
            stage_log: vec![],
        })
    }

    /// Fast controller stage −1: the degree-guard set U (every vertex v with
    /// |B₁(v)| ≥ k must see at least |B₁(v)|·p/2 U-vertices), R cops per
    /// U-vertex.
    fn build_guards(&mut self, g: &Graph, speed: usize, seed: u64) -> Result<(), ControllerError> {
        use rand::Rng;
        use rand::SeedableRng;
        let n = g.n();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(17));
        let budget = 1000;
        let mut u_set: Option<Vec<usize>> = None;
        'resample: for _ in 0..budget {
            let u: Vec<usize> = (0..n).filter(|_| rng.gen::<f64>() < self.p).collect();
            if u.len() as f64 > 2.0 * self.p * n as f64 + 1e-9 {
                continue;
            }
            let us = VertexSet::from_iter(n, u.iter().copied());
            for v in 0..n {
                let b1 = g.degree(v) + 1;
                if (b1 as f64) < self.k {
                    continue;
                }
                let guards = g.neighbors(v).iter().filter(|&&w| us.contains(w)).count();
                if (guards as f64) < b1 as f64 * self.p / 2.0 {
                    continue 'resample;
                }
            }
            u_set = Some(u);
            break;
        }
        let u = u_set.ok_or_else(|| {
            ControllerError::Precondition("degree-guard set resample budget exhausted".into())
        })?;
        self.budget.declared += 2 * speed * (self.p * n as f64).ceil() as usize;
        for _ in 0..speed {
            let idx: Vec<usize> =
                (self.positions.len()..self.positions.len() + u.len()).collect();
            self.positions.extend_from_slice(&u);
            self.guard_groups.push(idx);
        }
        self.budget.used = self.positions.len();
        Ok(())
    }

    fn fail(&mut self, reason: String) -> Vec<usize> {
        self.abort = Some(reason);
        self.mode = Mode::Aborted;
        self.positions.clone()
    }

    /// Plans every stage from the robber's placement: possible-position
    /// sets, Hall partitions, routes, deadlines.
    fn plan(&mut self, g: &Graph, robber: usize, round: usize) -> Result<(), String> {
        self.plan_round = round;
        let robber_speed = match self.kind {
            Kind::Fast { speed } => speed,
            _ => 1,
        };

        if let Kind::Digraph { radius } = self.kind {
            // targets: the whole out-ball of the robber; every vertex of it
            // gets a distinct cop within `radius` directed moves
            let mut rv = VertexSet::new(g.n());
            rv.insert(robber);
            let targets = g.ball(&rv, radius);
            let cops = VertexSet::from_iter(g.n(), self.positions.iter().copied());
            let routed = hall_route(g, &cops, &targets, radius)
                .map_err(|d| format!("Hall violation: deficient out-ball subset {:?}", d))?;
            self.install_routes(g, routed, radius)?;
            self.capture_deadline = round + radius;
            return Ok(());
        }

        // Fast stage −1: guard dispatch. Only guards that stay parked count
        // as blockers when computing N₀ — stage cops move away and the
        // robber may pass through vertices they vacate.
        let mut blockers: Vec<usize> = Vec::new();
        if let Kind::Fast { speed } = self.kind {
            let b1v = g.degree(robber) + 1;
            if b1v as f64 >= self.k {
                // a C₁ cop is adjacent by construction; send it onto the robber
                let grp = &self.guard_groups[0];
                let adj = grp
                    .iter()
                    .copied()
                    .find(|&ci| g.has_edge(self.positions[ci], robber))
                    .ok_or_else(|| {
                        "degree-guard invariant violated: no C1 cop adjacent to a high-degree start"
                            .to_string()
                    })?;
                self.routes.push(Route {
                    cop: adj,
                    path: VecDeque::from([robber]),
                });
                self.capture_deadline = round;
                return Ok(());
            }
            // dispatch C_2..C_R onto high-degree vertices near the robber,
            // all in the first cop move (each target adjacent to its cop);
            // the degree threshold for group C_{j+1} is (2/p)^j · k^(2^(j-1))
            let mut s_cur = VertexSet::new(g.n());
            s_cur.insert(robber);
            s_cur = g.ball(&s_cur, 1);
            for j in 1..speed {
                let threshold =
                    (2.0 / self.p).powi(j as i32) * self.k.powf((1u64 << (j - 1)) as f64);
                let grp = self.guard_groups[j].clone();
                let hot: Vec<usize> = s_cur
                    .iter()
                    .filter(|&v| (g.degree(v) as f64) >= threshold)
                    .collect();
                // greedy: a distinct adjacent C_{j+1} cop per hot vertex
                let mut used = vec![false; grp.len()];
                for &h in &hot {
                    let found = grp.iter().enumerate().find(|(gi, &ci)| {
                        !used[*gi]
                            && (self.positions[ci] == h || g.has_edge(self.positions[ci], h))
                    });
                    match found {
                        Some((gi, &ci)) => {
                            used[gi] = true;
                            if self.positions[ci] != h {
                                self.routes.push(Route { cop: ci, path: VecDeque::from([h]) });
                            }
                            blockers.push(h);
                        }
                        None => {
                            return Err(format!(
                                "degree-guard dispatch failed: no free C{} cop adjacent to {}",
                                j + 1,
                                h
                            ))
                        }
                    }
                }
                // robber avoids occupied hot vertices forever
                let mut next = VertexSet::new(g.n());
                for v in s_cur.iter() {
                    if !hot.contains(&v) {
                        next.insert(v);
                    }
                }
                s_cur = g.ball(&next, 1);
            }
            // undispatched guards stay parked at U and block as well
            let routed: std::collections::HashSet<usize> =
                self.routes.iter().map(|r| r.cop).collect();
            for grp in &self.guard_groups {
                for &ci in grp {
                    if !routed.contains(&ci) {
                        blockers.push(self.positions[ci]);
                    }
                }
            }
        }

        // N₀: what the robber can reach after his first move, with the
        // parked guards (and only them) blocking his walk.
        blockers.sort_unstable();
        blockers.dedup();
        let n0: Vec<usize> = crate::game::robber_moves_from(
            g,
            &blockers,
            robber,
            crate::game::Speed::Finite(robber_speed),
        );
        let mut n_cur = VertexSet::from_iter(g.n(), n0.iter().copied());

        let n0_bound = match self.kind {
            Kind::General => self.k,
            Kind::Fast { speed } => self.k.powi(1 << speed.min(20)),
            Kind::Digraph { .. } => unreachable!(),
        };
        self.stage_log.push((0, n_cur.len(), n0_bound));
        if n_cur.len() as f64 > n0_bound + 1e-9 {
            return Err(format!(
                "stage invariant violated: |N0| = {} exceeds bound {}",
                n_cur.len(),
                n0_bound
            ));
        }

        // Stages 0..l: split, route group i to T_i, N_{i+1} = B_{r_i}(S_i).
        // A stage with S_i = ∅ covers all possible positions and ends the plan.
        let l = self.radii.len() - 1;
        let mut deadline = round; // cumulative cop-move deadline
        for i in 0..=l {
            let r_i = self.radii[i];
            let a: Vec<usize> = n_cur.to_vec();
            let adj = dist_ball_adjacency(g, &a, r_i);
            let part = split_hall(&adj, g.n(), self.k);
            let s_i: Vec<usize> = part.s.iter().map(|&ai| a[ai]).collect();
            let t_i: Vec<usize> = part.t.iter().map(|&ai| a[ai]).collect();
            let final_stage = s_i.is_empty();
            if i == l && !final_stage {
                return Err(format!(
                    "stage invariant violated: S_l nonempty ({} vertices) at final stage {}",
                    s_i.len(),
                    l
                ));
            }
            // route group i to T_i
            let group_positions: Vec<usize> =
                self.groups[i].iter().map(|&ci| self.positions[ci]).collect();
            let cops = VertexSet::from_iter(g.n(), group_positions.iter().copied());
            let targets = VertexSet::from_iter(g.n(), t_i.iter().copied());
            let routed = hall_route(g, &cops, &targets, r_i).map_err(|d| {
                format!("Hall violation at stage {}: deficient targets {:?}", i, d)
            })?;
            // translate vertex-level assignment back to cop indices
            let mut assigned: Vec<(usize, usize)> = Vec::new(); // (cop index, target)
            let mut taken = vec![false; self.groups[i].len()];
            for (target, cop_vertex) in routed {
                let (gi, &ci) = self.groups[i]
                    .iter()
                    .enumerate()
                    .find(|(gi, &ci)| !taken[*gi] && self.positions[ci] == cop_vertex)
                    .expect("routed cop present in its group");
                taken[gi] = true;
                assigned.push((ci, target));
            }
            self.install_routes_indexed(g, &assigned, r_i)?;
            deadline += r_i;

            if final_stage {
                self.capture_deadline = deadline;
                return Ok(());
            }
            let s_set = VertexSet::from_iter(g.n(), s_i.iter().copied());
            n_cur = g.ball(&s_set, r_i);
            let bound = match self.kind {
                Kind::General => self.k.powi(i as i32 + 2),
                Kind::Fast { speed } => {
                    self.k.powi(1 << speed.min(20)) * self.k.powi(i as i32 + 1)
                }
                Kind::Digraph { .. } => unreachable!(),
            };
            self.stage_log.push((i + 1, n_cur.len(), bound));
            if n_cur.len() as f64 > bound + 1e-9 {
                return Err(format!(
                    "stage invariant violated: |N{}| = {} exceeds bound {}",
                    i + 1,
                    n_cur.len(),
                    bound
                ));
            }
        }
        unreachable!("final stage returns above (S_l = ∅ enforced)");
    }

    fn install_routes(
        &mut self,
        g: &Graph,
        routed: Vec<(usize, usize)>, // (target, cop vertex)
        max_len: usize,
    ) -> Result<(), String> {
        let mut assigned = Vec::new();
        let mut taken = vec![false; self.positions.len()];
        for (target, cop_vertex) in routed {
            let ci = (0..self.positions.len())
                .find(|&ci| !taken[ci] && self.positions[ci] == cop_vertex)
                .expect("routed cop exists");
            taken[ci] = true;
            assigned.push((ci, target));
        }
        self.install_routes_indexed(g, &assigned, max_len)
    }

    fn install_routes_indexed(
        &mut self,
        g: &Graph,
        assigned: &[(usize, usize)],
        max_len: usize,
    ) -> Result<(), String> {
        for &(ci, target) in assigned {
            let path = shortest_path(g, self.positions[ci], target)
                .ok_or_else(|| format!("no path from cop at {} to {}", self.positions[ci], target))?;
            if path.len() > max_len {
                return Err(format!(
                    "route of length {} exceeds stage radius {}",
                    path.len(),
                    max_len
                ));
            }
            self.routes.push(Route { cop: ci, path: path.into() });
        }
        Ok(())
    }

    fn advance_routes(&mut self) {
        for route in &mut self.routes {
            if let Some(next) = route.path.pop_front() {
                self.positions[route.cop] = next;
            }
        }
        self.routes.retain(|r| !r.path.is_empty());
    }
}

impl CopController for StagedCop {
    fn place(&mut self, _g: &Graph, _cfg: &GameConfig) -> Vec<usize> {
        self.positions.clone()
    }

    fn mv(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState, round: usize) -> Vec<usize> {
        if let Mode::Aborted = self.mode {
            return self.positions.clone();
        }
        let robber = s.robber.expect("robber placed");
        if let Mode::Unplanned = self.mode {
            match self.plan(g, robber, round) {
                Ok(()) => self.mode = Mode::Dispatching,
                Err(reason) => return self.fail(reason),
            }
        }
        self.advance_routes();
        if self.routes.is_empty() && round > self.capture_deadline {
            return self.fail(format!(
                "uncaptured after capture deadline (round {} > {})",
                round, self.capture_deadline
            ));
        }
        self.positions.clone()
    }

    fn name(&self) -> &'static str {
        match self.kind {
            Kind::General => "general",
            Kind::Fast { .. } => "fast",
            Kind::Digraph { .. } => "digraph",
        }
    }
}

/// Arena wrapper that surfaces staged-controller aborts as an explicit
/// outcome instead of a silent stalled playout.
pub struct StagedOutcome {
    pub trace: Trace,
    pub abort: Option<String>,
}

pub fn play_staged(
    g: &Graph,
    cfg: &GameConfig,
    cop: &mut StagedCop,
    robber: &mut dyn RobberController,
    max_rounds: usize,
    seed: u64,
) -> StagedOutcome {
    let trace = play(g, cfg, cop, robber, max_rounds, seed);
    StagedOutcome {
        trace,
        abort: cop.abort.clone(),
    }
}

// ------------------------------------------------------------- baselines

/// Greedy pursuit: each cop walks a shortest path toward the robber's
/// current position. Placement is a seeded random set of vertices.
pub struct GreedyCop {
    pub cop_count: usize,
    seed: u64,
}

impl GreedyCop {
    pub fn new(cop_count: usize, seed: u64) -> Self {
        GreedyCop { cop_count, seed }
    }
}

impl CopController for GreedyCop {
    fn reseed(&mut self, seed: u64) {
        self.seed = seed;
    }
    fn place(&mut self, g: &Graph, _cfg: &GameConfig) -> Vec<usize> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
        let mut verts: Vec<usize> = (0..g.n()).collect();
        verts.shuffle(&mut rng);
        verts.truncate(self.cop_count.min(g.n()));
        while verts.len() < self.cop_count {
            verts.push(verts[0]);
        }
        verts
    }
    fn mv(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState, _round: usize) -> Vec<usize> {
        let robber = s.robber.expect("robber placed");
        // BFS from the robber in the reversed graph: dist[v] = d(v -> robber)
        let dist = if g.is_directed() {
            g.reversed().bfs_distances(robber)
        } else {
            g.bfs_distances(robber)
        };
        s.cops
            .iter()
            .map(|&c| {
                let mut best = (dist[c], c);
                for &w in g.neighbors(c) {
                    if dist[w] < best.0 {
                        best = (dist[w], w);
                    }
                }
                best.1
            })
            .collect()
    }
    fn name(&self) -> &'static str {
        "greedy"
    }
}

/// Cops that drift uniformly at random (stay or one edge), seeded.
pub struct RandomCop {
    pub cop_count: usize,
    rng: rand_chacha::ChaCha8Rng,
}

impl RandomCop {
    pub fn new(cop_count: usize, seed: u64) -> Self {
        use rand::SeedableRng;
        RandomCop {
            cop_count,
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl CopController for RandomCop {
    fn reseed(&mut self, seed: u64) {
        use rand::SeedableRng;
        self.rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    }
    fn place(&mut self, g: &Graph, _cfg: &GameConfig) -> Vec<usize> {
        use rand::Rng;
        (0..self.cop_count).map(|_| self.rng.gen_range(0..g.n())).collect()
    }
    fn mv(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState, _round: usize) -> Vec<usize> {
        use rand::Rng;
        s.cops
            .iter()
            .map(|&c| {
                let d = g.degree(c);
                let pick = self.rng.gen_range(0..=d);
                if pick == d {
                    c
                } else {
                    g.neighbors(c)[pick]
                }
            })
            .collect()
    }
    fn name(&self) -> &'static str {
        "random"
    }
}

/// Robber that places on the first cop-free vertex and never moves.
pub struct StationaryRobber;

impl RobberController for StationaryRobber {
    fn place(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState) -> Option<usize> {
        (0..g.n()).find(|&v| !s.cop_occupied(v))
    }
    fn mv(&mut self, _g: &Graph, _cfg: &GameConfig, s: &GameState, _round: usize) -> Option<usize> {
        s.robber
    }
    fn name(&self) -> &'static str {
        "stationary"
    }
}

/// Robber moving uniformly at random among legal destinations.
pub struct RandomRobber {
    rng: rand_chacha::ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        RandomRobber {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RobberController for RandomRobber {
    fn reseed(&mut self, seed: u64) {
        use rand::SeedableRng;
        self.rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    }
    fn place(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState) -> Option<usize> {
        use rand::seq::IteratorRandom;
        (0..g.n())
            .filter(|&v| !s.cop_occupied(v))
            .choose(&mut self.rng)
    }
    fn mv(&mut self, g: &Graph, cfg: &GameConfig, s: &GameState, _round: usize) -> Option<usize> {
        use rand::seq::SliceRandom;
        let moves =
            crate::game::robber_moves_from(g, &s.cops, s.robber.unwrap(), cfg.speed);
        moves.choose(&mut self.rng).copied()
    }
    fn name(&self) -> &'static str {
        "random"
    }
}
