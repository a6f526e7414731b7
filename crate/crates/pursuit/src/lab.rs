//! Random-graph laboratory: generators for the lower-bound constructions,
//! validators for the random-graph property lemmas (honest about quantifier
//! coverage: exhaustive up to a stated cap, otherwise sampled with trial
//! count and seed), and the two robber evasion strategies extracted from
//! the lower-bound proofs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::game::{GameConfig, GameState, RobberController};
use crate::graph::{Graph, VertexSet};

// ---------------------------------------------------------------- generators

/// 1-subdivision of K_n: one vertex added on each edge. Joins are 0..n
/// (degree n−1), internal vertices follow (degree 2).
pub fn subdivide_complete(n: usize) -> Graph {
    assert!(n >= 3);
    let internals = n * (n - 1) / 2;
    let mut g = Graph::undirected(n + internals);
    let mut next = n;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, next).unwrap();
            g.add_edge(v, next).unwrap();
            next += 1;
        }
    }
    let mut edges = g.edges();
    edges.sort_unstable();
    Graph::from_edges(n + internals, false, &edges).unwrap()
}

/// The Petersen graph: outer 5-cycle 0–4, inner pentagram 5–9, spokes.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, 5 + i));
    }
    Graph::from_edges(10, false, &e).unwrap()
}

/// G(n,p): each unordered pair included independently with probability p.
/// Deterministic per seed (ChaCha8).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::undirected(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let edges = g.edges();
    Graph::from_edges(n, false, &edges).unwrap()
}

/// Random weakly-connected-ish digraph: each ordered pair gets an arc with
/// probability p. Used for oracle sweeps; deterministic per seed.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::directed(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen::<f64>() < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let edges = g.edges();
    Graph::from_edges(n, true, &edges).unwrap()
}

// ---------------------------------------------------------------- validators

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// All qualifying sets up to this size were enumerated.
    Exhaustive { cap: usize },
    /// Uniform random sets, this many trials, per-seed deterministic.
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    /// Exhaustive only up to the mode's cap; nothing violated below it.
    HoldsUpToCap,
    /// Witness sets re-check as violating (one set, or a disjoint pair).
    Violated { witness: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidatorReport {
    pub property: String,
    pub mode: Mode,
    pub verdict: Verdict,
    /// Worst observed ratio of measured quantity to its bound (where the
    /// property is a ≤-bound; 1.0+ means violated).
    pub worst_ratio: f64,
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.partial_shuffle(rng, size);
    let mut s = all[..size].to_vec();
    s.sort_unstable();
    s
}

fn induced_edges(g: &Graph, s: &[usize]) -> usize {
    let set = VertexSet::from_iter(g.n(), s.iter().copied());
    let mut e = 0;
    for &u in s {
        for &v in g.neighbors(u) {
            if v > u && set.contains(v) {
                e += 1;
            }
        }
    }
    e
}

/// Drives a validator over subsets: `sizes` yields the subset size per
/// trial, `check` returns the (measured, bound) pair for a subset.
fn subset_validator(
    g: &Graph,
    property: &str,
    mode: Mode,
    max_size: usize,
    check: impl Fn(&[usize]) -> (f64, f64),
) -> ValidatorReport {
    let mut worst: f64 = 0.0;
    let mut witness: Option<Vec<usize>> = None;

    let mut consider = |s: &[usize]| -> bool {
        let (measured, bound) = check(s);
        let ratio = if bound <= 0.0 {
            if measured > 0.0 { f64::INFINITY } else { 0.0 }
        } else {
            measured / bound
        };
        if ratio > worst {
            worst = ratio;
        }
        if measured > bound + 1e-9 {
            witness = Some(s.to_vec());
            return false;
        }
        true
    };

    match mode {
        Mode::Exhaustive { cap } => {
            let cap = cap.min(max_size);
            let mut stack: Vec<usize> = Vec::new();
            fn rec(
                n: usize,
                cap: usize,
                start: usize,
                stack: &mut Vec<usize>,
                consider: &mut dyn FnMut(&[usize]) -> bool,
            ) -> bool {
                if !stack.is_empty() && !consider(stack) {
                    return false;
                }
                if stack.len() == cap {
                    return true;
                }
                for v in start..n {
                    stack.push(v);
                    if !rec(n, cap, v + 1, stack, consider) {
                        return false;
                    }
                    stack.pop();
                }
                true
            }
            rec(g.n(), cap, 0, &mut stack, &mut consider);
        }
        Mode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let size = rng.gen_range(1..=max_size.max(1)).min(g.n());
                let s = random_subset(&mut rng, g.n(), size);
                if !consider(&s) {
                    break;
                }
            }
        }
    }

    let verdict = match witness {
        Some(w) => Verdict::Violated { witness: vec![w] },
        None => match mode {
            Mode::Exhaustive { cap } if cap >= max_size => Verdict::Holds,
            Mode::Exhaustive { .. } => Verdict::HoldsUpToCap,
            Mode::Sampled { .. } => Verdict::Holds,
        },
    };
    ValidatorReport {
        property: property.to_string(),
        mode,
        verdict,
        worst_ratio: worst,
    }
}

/// Neighbor bitsets, one per vertex; lets validators count induced edges in
/// O(|S|·n/64) instead of O(|S|·deg).
fn adjacency_rows(g: &Graph) -> Vec<VertexSet> {
    (0..g.n())
        .map(|v| VertexSet::from_iter(g.n(), g.neighbors(v).iter().copied()))
        .collect()
}

fn induced_edges_rows(rows: &[VertexSet], n: usize, s: &[usize]) -> usize {
    let set = VertexSet::from_iter(n, s.iter().copied());
    let twice: usize = s.iter().map(|&u| rows[u].intersection_len(&set)).sum();
    twice / 2
}

/// Every set of at most `s_max` vertices has average induced degree at most
/// `bound` (2·e(S)/|S| ≤ bound).
pub fn validate_subset_avg_degree(g: &Graph, s_max: usize, bound: f64, mode: Mode) -> ValidatorReport {
    let rows = adjacency_rows(g);
    subset_validator(g, "subset-avg-degree", mode, s_max, |s| {
        let avg = 2.0 * induced_edges_rows(&rows, g.n(), s) as f64 / s.len() as f64;
        (avg, bound)
    })
}

/// Every set of exactly `set_size` vertices covers at most `bound` edges
/// (an edge is covered if at least one endpoint is in the set).
pub fn validate_cover(g: &Graph, set_size: usize, bound: f64, mode: Mode) -> ValidatorReport {
    // fixed-size sets: exhaust/sample at exactly set_size
    // edges with ≥1 endpoint in S = Σ_{v∈S} deg(v) − e(S): degree sums count
    // internal edges twice, the induced count removes one of each.
    let covered = |s: &[usize]| {
        let deg_sum: usize = s.iter().map(|&v| g.degree(v)).sum();
        (deg_sum - induced_edges(g, s)) as f64
    };
    match mode {
        Mode::Sampled { trials, seed } => {
            let mut worst: f64 = 0.0;
            let mut witness = None;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let s = random_subset(&mut rng, g.n(), set_size.min(g.n()));
                let c = covered(&s);
                let ratio = if bound > 0.0 { c / bound } else if c > 0.0 { f64::INFINITY } else { 0.0 };
                if ratio > worst {
                    worst = ratio;
                }
                if c > bound + 1e-9 {
                    witness = Some(s);
                    break;
                }
            }
            ValidatorReport {
                property: "cover".into(),
                mode,
                verdict: match witness {
                    Some(w) => Verdict::Violated { witness: vec![w] },
                    None => Verdict::Holds,
                },
                worst_ratio: worst,
            }
        }
        Mode::Exhaustive { .. } => {
            // enumerate all sets of the exact size via the generic driver by
            // only scoring full-size sets
            subset_validator(g, "cover", mode, set_size, |s| {
                if s.len() < set_size {
                    (0.0, f64::INFINITY)
                } else {
                    (covered(s), bound)
                }
            })
        }
    }
}

/// There is an edge between every pair of disjoint vertex sets of size `s0`.
pub fn validate_pair_connect(g: &Graph, s0: usize, mode: Mode) -> ValidatorReport {
    let has_edge_between = |a: &[usize], b: &[usize]| {
        let bset = VertexSet::from_iter(g.n(), b.iter().copied());
        a.iter().any(|&u| g.neighbors(u).iter().any(|&v| bset.contains(v)))
    };
    match mode {
        Mode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                if 2 * s0 > g.n() {
                    break;
                }
                let both = random_subset(&mut rng, g.n(), 2 * s0);
                let (a, b) = both.split_at(s0);
                if !has_edge_between(a, b) {
                    return ValidatorReport {
                        property: "pair-connect".into(),
                        mode,
                        verdict: Verdict::Violated {
                            witness: vec![a.to_vec(), b.to_vec()],
                        },
                        worst_ratio: f64::INFINITY,
                    };
                }
            }
            ValidatorReport {
                property: "pair-connect".into(),
                mode,
                verdict: Verdict::Holds,
                worst_ratio: 0.0,
            }
        }
        Mode::Exhaustive { .. } => {
            // tiny n only: enumerate all disjoint ordered pairs of s0-sets
            let n = g.n();
            let mut verdict = Verdict::Holds;
            'outer: for mask_a in 1u32..(1 << n) {
                if mask_a.count_ones() as usize != s0 {
                    continue;
                }
                for mask_b in 1u32..(1 << n) {
                    if mask_b.count_ones() as usize != s0 || mask_a & mask_b != 0 {
                        continue;
                    }
                    let a: Vec<usize> = (0..n).filter(|&v| mask_a >> v & 1 == 1).collect();
                    let b: Vec<usize> = (0..n).filter(|&v| mask_b >> v & 1 == 1).collect();
                    if !has_edge_between(&a, &b) {
                        verdict = Verdict::Violated { witness: vec![a, b] };
                        break 'outer;
                    }
                }
            }
            let violated = matches!(verdict, Verdict::Violated { .. });
            ValidatorReport {
                property: "pair-connect".into(),
                mode,
                verdict,
                worst_ratio: if violated { f64::INFINITY } else { 0.0 },
            }
        }
    }
}

/// Every set of size s ≤ `s0` spans at most `per_vertex`·s edges
/// (the lemma instantiates per_vertex = 6·log n).
pub fn validate_span_few(g: &Graph, s0: usize, per_vertex: f64, mode: Mode) -> ValidatorReport {
    let rows = adjacency_rows(g);
    subset_validator(g, "span-few", mode, s0, |s| {
        (
            induced_edges_rows(&rows, g.n(), s) as f64,
            per_vertex * s.len() as f64,
        )
    })
}

/// For sets U with |U| = t in [γnp, (γ³/2e⁵)n], the number of vertices
/// v ∉ U with at least γnp neighbors in U is at most 3t/(γnp).
pub fn validate_degree_spread(g: &Graph, gamma: f64, np: f64, mode: Mode) -> ValidatorReport {
    let n = g.n();
    let gnp_thresh = gamma * np;
    let t_lo = gnp_thresh.ceil().max(1.0) as usize;
    let t_hi = ((gamma.powi(3) / (2.0 * std::f64::consts::E.powi(5))) * n as f64).floor() as usize;
    let check = |u: &[usize]| {
        let uset = VertexSet::from_iter(n, u.iter().copied());
        let heavy = (0..n)
            .filter(|&v| !uset.contains(v))
            .filter(|&v| {
                g.neighbors(v).iter().filter(|&&w| uset.contains(w)).count() as f64 >= gnp_thresh
            })
            .count();
        (heavy as f64, 3.0 * u.len() as f64 / gnp_thresh)
    };
    match mode {
        Mode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst: f64 = 0.0;
            let mut witness = None;
            if t_lo <= t_hi && t_hi >= 1 {
                for _ in 0..trials {
                    let t = rng.gen_range(t_lo..=t_hi.min(n));
                    let u = random_subset(&mut rng, n, t);
                    let (h, b) = check(&u);
                    let ratio = if b > 0.0 { h / b } else if h > 0.0 { f64::INFINITY } else { 0.0 };
                    if ratio > worst {
                        worst = ratio;
                    }
                    if h > b + 1e-9 {
                        witness = Some(u);
                        break;
                    }
                }
            }
            ValidatorReport {
                property: "degree-spread".into(),
                mode,
                verdict: match witness {
                    Some(w) => Verdict::Violated { witness: vec![w] },
                    None => Verdict::Holds,
                },
                worst_ratio: worst,
            }
        }
        Mode::Exhaustive { cap } => subset_validator(g, "degree-spread", mode, cap, |u| {
            if u.len() < t_lo || u.len() > t_hi {
                (0.0, f64::INFINITY)
            } else {
                check(u)
            }
        }),
    }
}

/// All degrees within [lo, hi]; full deterministic check.
pub fn validate_degree_range(g: &Graph, lo: f64, hi: f64) -> ValidatorReport {
    let mut witness = None;
    let mut worst: f64 = 0.0;
    for v in 0..g.n() {
        let d = g.degree(v) as f64;
        let ratio = if hi > 0.0 { d / hi } else { f64::INFINITY };
        if ratio > worst {
            worst = ratio;
        }
        if d < lo || d > hi {
            witness = Some(vec![v]);
            break;
        }
    }
    ValidatorReport {
        property: "degree-range".into(),
        mode: Mode::Exhaustive { cap: g.n() },
        verdict: match witness {
            Some(w) => Verdict::Violated { witness: vec![w] },
            None => Verdict::Holds,
        },
        worst_ratio: worst,
    }
}

// ------------------------------------------------------------------ evaders

/// Cop positions plus all their immediate neighbors.
pub fn closed_cop_neighborhood(g: &Graph, cops: &[usize]) -> VertexSet {
    let cop_set = VertexSet::from_iter(g.n(), cops.iter().copied());
    g.ball(&cop_set, 1)
}

/// Largest connected component of the induced subgraph on `region`
/// (original ids); ties go to the component with the smallest vertex.
pub fn largest_component(g: &Graph, region: &VertexSet) -> Option<VertexSet> {
    if region.is_empty() {
        return None;
    }
    let (sub, ids) = g.induced(region);
    let comps = sub.components().unwrap();
    let best = comps.iter().max_by_key(|c| c.len())?;
    Some(VertexSet::from_iter(g.n(), best.iter().map(|v| ids[v])))
}

/// Infinite-speed evasion: live in the largest component of G∖C⁺ and rush
/// to it whenever the cops' closed neighborhood shifts. Surrenders (UNSAFE)
/// only when no cop-free reachable vertex outside C⁺ exists.
pub struct InfiniteEvader;

impl RobberController for InfiniteEvader {
    fn place(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState) -> Option<usize> {
        let cplus = closed_cop_neighborhood(g, &s.cops);
        let mut outside = VertexSet::new(g.n());
        for v in 0..g.n() {
            if !cplus.contains(v) {
                outside.insert(v);
            }
        }
        let comp = largest_component(g, &outside)?;
        let v = comp.iter().next();
        v
    }

    fn mv(&mut self, g: &Graph, cfg: &GameConfig, s: &GameState, _round: usize) -> Option<usize> {
        let cur = s.robber.expect("robber placed");
        // cheap common case: two steps clear of every cop means staying put
        // stays clear of the cops' next move, no component recompute needed
        let mut near = VertexSet::from_iter(g.n(), g.neighbors(cur).iter().copied());
        near.insert(cur);
        let two_close = s.cops.iter().any(|&c| {
            near.contains(c) || g.neighbors(c).iter().any(|&w| near.contains(w))
        });
        if !two_close {
            return Some(cur);
        }
        let reach = crate::game::robber_moves_from(g, &s.cops, cur, cfg.speed);
        let cplus = closed_cop_neighborhood(g, &s.cops);
        // candidates: reachable, cop-free (guaranteed by the move set),
        // outside the cops' closed neighborhood
        let candidates: Vec<usize> = reach.iter().copied().filter(|&v| !cplus.contains(v)).collect();
        if candidates.is_empty() {
            return None; // UNSAFE
        }
        // prefer the largest safe component; break ties by smallest vertex
        let mut outside = VertexSet::new(g.n());
        for v in 0..g.n() {
            if !cplus.contains(v) {
                outside.insert(v);
            }
        }
        let (sub, ids) = g.induced(&outside);
        let comps = sub.components().unwrap();
        let mut comp_of = vec![usize::MAX; g.n()];
        for (i, c) in comps.iter().enumerate() {
            for v in c.iter() {
                comp_of[ids[v]] = i;
            }
        }
        let comp_size = |v: usize| comps[comp_of[v]].len();
        let best = candidates
            .iter()
            .copied()
            .max_by(|&a, &b| comp_size(a).cmp(&comp_size(b)).then(b.cmp(&a)))?;
        Some(best)
    }

    fn name(&self) -> &'static str {
        "infinite-evader"
    }
}

/// Finite-speed evasion from the k-core argument: live in the np/3-core of
/// the graph outside the cops' closed neighborhood; when displaced, walk
/// (≤ speed edges, avoiding cops) to a vertex of the new core found through
/// nearby layers of the old one.
pub struct FiniteEvader {
    /// BFS depth budget i₀ = ⌈1/c⌉ + 1 used while hunting an exit edge.
    pub depth: usize,
    /// Layer growth stops once this many old-core vertices are in reach.
    pub s0: usize,
    /// Core degree threshold ⌈np/3⌉.
    pub core_k: usize,
    core: Option<VertexSet>,
}

impl FiniteEvader {
    /// `c` is the lower-bound exponent parameter (speed = ⌈1/c⌉ + 2),
    /// `np` the expected average degree, `s0` the well-connectedness size.
    pub fn new(c: f64, np: f64, s0: usize) -> Self {
        FiniteEvader {
            depth: (1.0 / c).ceil() as usize + 1,
            s0,
            core_k: (np / 3.0).ceil() as usize,
            core: None,
        }
    }

    /// Speed the game config must grant this controller.
    pub fn required_speed(c: f64) -> usize {
        (1.0 / c).ceil() as usize + 2
    }

    fn core_outside(&self, g: &Graph, cops: &[usize]) -> VertexSet {
        let cplus = closed_cop_neighborhood(g, cops);
        let mut keep = VertexSet::new(g.n());
        for v in 0..g.n() {
            if !cplus.contains(v) {
                keep.insert(v);
            }
        }
        let (sub, ids) = g.induced(&keep);
        let core = sub.k_core(self.core_k).unwrap();
        VertexSet::from_iter(g.n(), core.iter().map(|v| ids[v]))
    }
}

impl RobberController for FiniteEvader {
    fn place(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState) -> Option<usize> {
        let h = self.core_outside(g, &s.cops);
        let first = h.iter().next();
        if first.is_some() {
            self.core = Some(h);
        }
        first // surrender recorded when the core is empty at placement
    }

    fn mv(&mut self, g: &Graph, cfg: &GameConfig, s: &GameState, _round: usize) -> Option<usize> {
        let cur = s.robber.expect("robber placed");
        let h_new = self.core_outside(g, &s.cops);
        if h_new.is_empty() {
            return None;
        }
        if h_new.contains(cur) {
            self.core = Some(h_new);
            return Some(cur);
        }
        let h_old = self.core.as_ref()?.clone();
        // BFS inside the old core avoiding current cop positions
        let cop_set = s.cop_set(g.n());
        let mut dist = vec![usize::MAX; g.n()];
        dist[cur] = 0;
        let mut q = std::collections::VecDeque::from([cur]);
        let mut seen_count = 1usize;
        while let Some(u) = q.pop_front() {
            if dist[u] >= self.depth || seen_count >= self.s0 {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX && h_old.contains(v) && !cop_set.contains(v) {
                    dist[v] = dist[u] + 1;
                    seen_count += 1;
                    q.push_back(v);
                }
            }
        }
        // exit edge: reached old-core vertex adjacent to the new core,
        // total walk length ≤ speed
        let speed = match cfg.speed {
            crate::game::Speed::Finite(r) => r,
            crate::game::Speed::Infinite => usize::MAX,
        };
        let mut best: Option<(usize, usize)> = None; // (walk length, target)
        for u in 0..g.n() {
            if dist[u] == usize::MAX {
                continue;
            }
            if h_new.contains(u) {
                // already safe within the explored region
                let cand = (dist[u], u);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
                continue;
            }
            for &w in g.neighbors(u) {
                if h_new.contains(w) && !cop_set.contains(w) && dist[u] + 1 <= speed {
                    let cand = (dist[u] + 1, w);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        match best {
            Some((len, w)) if len <= speed => {
                self.core = Some(h_new);
                Some(w)
            }
            _ => None,
        }
    }

    fn name(&self) -> &'static str {
        "finite-evader"
    }
}
