//! Hall-condition machinery on bipartite structures.
//!
//! `split_hall` partitions the left side A into a deficient part S (with
//! |N(S)| ≤ k|S|) and a healthy part T (every U ⊆ T has |N(U)| ≥ k|U|),
//! computed deterministically by a max-flow formulation: source→a with
//! capacity k, a→b with capacity k, b→sink with capacity 1, scaled to
//! integers for non-integer k. The minimal min-cut witness (residual-
//! reachable A-vertices) is the deficient part; by submodularity of
//! U ↦ |N(U)| − k|U| a single flow suffices.
//!
//! `hall_route` assigns a distinct cop within distance r to every target via
//! bipartite matching, returning a deficient target subset as a certificate
//! when Hall's condition fails.

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitePartition {
    /// Indices into A: the deficient side, |N(S)| ≤ k|S|.
    pub s: Vec<usize>,
    /// Indices into A: every subset U has |N(U)| ≥ k|U|.
    pub t: Vec<usize>,
}

/// Rational approximation of k with bounded denominator (continued
/// fractions); exact for the rationals that occur in practice.
fn rationalize(k: f64) -> (i64, i64) {
    assert!(k > 0.0 && k.is_finite());
    let cap: i64 = 1_000_000;
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut x = k;
    loop {
        let a = x.floor() as i64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if p2 > cap || q2 > cap {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    (p1.max(1), q1.max(1))
}

/// Dinic max-flow on a small dense-ish instance.
struct Flow {
    // per node: list of (to, cap, rev-index)
    adj: Vec<Vec<(usize, i64, usize)>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { adj: vec![Vec::new(); n] }
    }
    fn add(&mut self, u: usize, v: usize, cap: i64) {
        let ru = self.adj[v].len();
        let rv = self.adj[u].len();
        self.adj[u].push((v, cap, ru));
        self.adj[v].push((u, 0, rv));
    }
    fn run(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            // BFS levels
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &(v, cap, _) in &self.adj[u] {
                    if cap > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0usize; n];
            loop {
                let pushed = self.dfs(s, t, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }
    fn dfs(&mut self, u: usize, t: usize, limit: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while it[u] < self.adj[u].len() {
            let (v, cap, rev) = self.adj[u][it[u]];
            if cap > 0 && level[v] == level[u] + 1 {
                let d = self.dfs(v, t, limit.min(cap), level, it);
                if d > 0 {
                    self.adj[u][it[u]].1 -= d;
                    self.adj[v][rev].1 += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }
    /// Nodes reachable from s in the residual network.
    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(v, cap, _) in &self.adj[u] {
                if cap > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Splits `A` (given by its adjacency into B: `adj[i]` lists B-indices of
/// the i-th A-element) into the maximal-value deficient part S and healthy
/// remainder T. `b_size` is |B|.
pub fn split_hall(adj: &[Vec<usize>], b_size: usize, k: f64) -> BipartitePartition {
    let a = adj.len();
    if a == 0 {
        return BipartitePartition { s: vec![], t: vec![] };
    }
    let (kp, kq) = rationalize(k);
    // Degenerate: k so large that any A-element with < k|A| neighbors is
    // deficient regardless — the flow handles it, but guard overflow.
    let source = 0;
    let sink = 1 + a + b_size;
    let mut f = Flow::new(sink + 1);
    for (i, nbrs) in adj.iter().enumerate() {
        f.add(source, 1 + i, kp);
        for &j in nbrs {
            assert!(j < b_size, "B-index out of range");
            f.add(1 + i, 1 + a + j, kp);
        }
    }
    for j in 0..b_size {
        f.add(1 + a + j, sink, kq);
    }
    f.run(source, sink);
    let reach = f.residual_reachable(source);
    let mut s = Vec::new();
    let mut t = Vec::new();
    for i in 0..a {
        if reach[1 + i] {
            s.push(i);
        } else {
            t.push(i);
        }
    }
    BipartitePartition { s, t }
}

/// Direct check of both partition postconditions by subset enumeration
/// (exponential in |T|; test/verification use only).
pub fn check_partition(adj: &[Vec<usize>], b_size: usize, k: f64, part: &BipartitePartition) -> bool {
    let a = adj.len();
    let mut seen = vec![false; a];
    for &i in part.s.iter().chain(&part.t) {
        if i >= a || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    if !seen.iter().all(|&x| x) {
        return false;
    }
    let nsize = |set: &[usize]| {
        let mut nb = vec![false; b_size];
        let mut c = 0;
        for &i in set {
            for &j in &adj[i] {
                if !nb[j] {
                    nb[j] = true;
                    c += 1;
                }
            }
        }
        c as f64
    };
    if nsize(&part.s) > k * part.s.len() as f64 + 1e-9 {
        return false;
    }
    // every nonempty U ⊆ T must have |N(U)| ≥ k|U|
    let t = &part.t;
    for mask in 1u64..(1 << t.len()) {
        let u: Vec<usize> = (0..t.len()).filter(|&i| mask >> i & 1 == 1).map(|i| t[i]).collect();
        if nsize(&u) + 1e-9 < k * u.len() as f64 {
            return false;
        }
    }
    true
}

/// Injective assignment of a distinct cop to every target, each cop within
/// (directed, toward the target) distance `r` of its target. On failure
/// returns a target subset whose r-in-ball holds fewer cops than targets.
pub fn hall_route(
    g: &Graph,
    cops: &VertexSet,
    targets: &VertexSet,
    r: usize,
) -> Result<Vec<(usize, usize)>, Vec<usize>> {
    let target_list: Vec<usize> = targets.iter().collect();
    let cop_list: Vec<usize> = cops.iter().collect();
    let rev = g.reversed();
    // eligible[i] = cops within distance r of target i (cop → target)
    let eligible: Vec<Vec<usize>> = target_list
        .iter()
        .map(|&t| {
            let mut tset = VertexSet::new(g.n());
            tset.insert(t);
            let ball = rev.ball(&tset, r); // vertices that reach t within r
            cop_list
                .iter()
                .enumerate()
                .filter(|(_, &c)| ball.contains(c))
                .map(|(ci, _)| ci)
                .collect()
        })
        .collect();

    // Kuhn's augmenting-path matching, targets on the left.
    let mut match_cop: Vec<Option<usize>> = vec![None; cop_list.len()]; // cop -> target
    let mut match_target: Vec<Option<usize>> = vec![None; target_list.len()];
    fn try_augment(
        i: usize,
        eligible: &[Vec<usize>],
        match_cop: &mut [Option<usize>],
        match_target: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &c in &eligible[i] {
            if visited[c] {
                continue;
            }
            visited[c] = true;
            if match_cop[c].is_none()
                || try_augment(match_cop[c].unwrap(), eligible, match_cop, match_target, visited)
            {
                match_cop[c] = Some(i);
                match_target[i] = Some(c);
                return true;
            }
        }
        false
    }
    for i in 0..target_list.len() {
        let mut visited = vec![false; cop_list.len()];
        if !try_augment(i, &eligible, &mut match_cop, &mut match_target, &mut visited) {
            // König: targets alternating-reachable from the unmatched target
            // form a deficient set.
            let mut in_set = vec![false; target_list.len()];
            let mut cop_seen = vec![false; cop_list.len()];
            let mut stack = vec![i];
            in_set[i] = true;
            while let Some(u) = stack.pop() {
                for &c in &eligible[u] {
                    if !cop_seen[c] {
                        cop_seen[c] = true;
                        if let Some(t2) = match_cop[c] {
                            if !in_set[t2] {
                                in_set[t2] = true;
                                stack.push(t2);
                            }
                        }
                    }
                }
            }
            let deficient: Vec<usize> = (0..target_list.len())
                .filter(|&j| in_set[j])
                .map(|j| target_list[j])
                .collect();
            return Err(deficient);
        }
    }
    Ok(target_list
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, cop_list[match_target[i].unwrap()]))
        .collect())
}

/// Re-checks a deficiency certificate: the set of cops within distance r of
/// any member must be smaller than the set.
pub fn check_deficient(g: &Graph, cops: &VertexSet, deficient: &[usize], r: usize) -> bool {
    if deficient.is_empty() {
        return false;
    }
    let rev = g.reversed();
    let tset = VertexSet::from_iter(g.n(), deficient.iter().copied());
    let ball = rev.ball(&tset, r);
    let cop_count = cops.iter().filter(|&c| ball.contains(c)).count();
    cop_count < deficient.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationalize_exact() {
        assert_eq!(rationalize(2.0), (2, 1));
        assert_eq!(rationalize(0.5), (1, 2));
        assert_eq!(rationalize(1.5), (3, 2));
    }

    #[test]
    fn split_hall_example() {
        // N(a1)={b1}, N(a2)={b1,b2}, N(a3)={b1,b2,b3,b4}, k=2
        let adj = vec![vec![0], vec![0, 1], vec![0, 1, 2, 3]];
        let part = split_hall(&adj, 4, 2.0);
        assert!(check_partition(&adj, 4, 2.0, &part));
        // a1 is unavoidably deficient, a3 never is
        assert!(part.s.contains(&0));
        assert!(part.t.contains(&2));
    }

    #[test]
    fn split_hall_no_deficiency() {
        // disjoint neighborhoods of size ≥ k|A|
        let adj = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]];
        let part = split_hall(&adj, 8, 2.0);
        assert!(part.s.is_empty());
        assert_eq!(part.t, vec![0, 1]);
        assert!(check_partition(&adj, 8, 2.0, &part));
    }

    #[test]
    fn split_hall_empty_b() {
        let adj = vec![vec![], vec![]];
        let part = split_hall(&adj, 0, 1.0);
        assert_eq!(part.s, vec![0, 1]);
        assert!(part.t.is_empty());
        assert!(check_partition(&adj, 0, 1.0, &part));
    }

    #[test]
    fn split_hall_fractional_k() {
        let adj = vec![vec![0], vec![0, 1], vec![1, 2]];
        for k in [0.5, 1.0, 1.5, 2.5] {
            let part = split_hall(&adj, 3, k);
            assert!(check_partition(&adj, 3, k, &part), "k={}", k);
        }
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, false, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hall_route_identity() {
        let g = path(3);
        let cops = VertexSet::from_iter(3, [0, 2]);
        let targets = VertexSet::from_iter(3, [0, 2]);
        let a = hall_route(&g, &cops, &targets, 0).unwrap();
        assert_eq!(a, vec![(0, 0), (2, 2)]);
    }

    #[test]
    fn hall_route_violation() {
        let g = path(3);
        let cops = VertexSet::from_iter(3, [0]);
        let targets = VertexSet::from_iter(3, [1, 2]);
        let d = hall_route(&g, &cops, &targets, 2).unwrap_err();
        assert_eq!(d, vec![1, 2]);
        assert!(check_deficient(&g, &cops, &d, 2));
    }

    #[test]
    fn hall_route_star_injectivity() {
        // center cop, three leaf targets, r=1: only one cop for three targets
        let g = Graph::from_edges(4, false, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cops = VertexSet::from_iter(4, [0]);
        let targets = VertexSet::from_iter(4, [1, 2, 3]);
        let d = hall_route(&g, &cops, &targets, 1).unwrap_err();
        assert!(d.len() >= 2);
        assert!(check_deficient(&g, &cops, &d, 1));
    }

    #[test]
    fn hall_route_directed_respects_direction() {
        // cop at 0 can ride 0→1→2; a cop at 2 cannot go back
        let g = Graph::from_edges(3, true, &[(0, 1), (1, 2)]).unwrap();
        let cops = VertexSet::from_iter(3, [0]);
        let targets = VertexSet::from_iter(3, [2]);
        assert!(hall_route(&g, &cops, &targets, 2).is_ok());
        let cops2 = VertexSet::from_iter(3, [2]);
        let targets2 = VertexSet::from_iter(3, [0]);
        assert!(hall_route(&g, &cops2, &targets2, 2).is_err());
    }

    #[test]
    fn matching_agrees_with_subset_enumeration() {
        // random-ish small instances: assignment exists iff no deficient set
        let g = path(6);
        for r in 0..3 {
            for cop_mask in 1u32..64 {
                let cops = VertexSet::from_iter(6, (0..6).filter(|&v| cop_mask >> v & 1 == 1));
                let targets = VertexSet::from_iter(6, [1, 4]);
                let routed = hall_route(&g, &cops, &targets, r);
                // Hall check by enumeration over target subsets
                let rev = g.reversed();
                let mut hall = true;
                for mask in 1u32..4 {
                    let sub: Vec<usize> = [1usize, 4]
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &t)| t)
                        .collect();
                    let ball = rev.ball(&VertexSet::from_iter(6, sub.iter().copied()), r);
                    let avail = cops.iter().filter(|&c| ball.contains(c)).count();
                    if avail < sub.len() {
                        hall = false;
                    }
                }
                assert_eq!(routed.is_ok(), hall, "cops={:?} r={}", cops, r);
                if let Err(d) = routed {
                    assert!(check_deficient(&g, &cops, &d, r));
                }
            }
        }
    }
}
