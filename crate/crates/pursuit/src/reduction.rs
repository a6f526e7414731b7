//! Reduction of the cop number of a weakly connected digraph to its
//! strongly connected components: cops must enter a component from the
//! condensation's sources, so choosing how many to park on each source is a
//! covering integer program with one constraint per component (the sources
//! feeding component j must contribute at least its cop number c_j).
//!
//! The covering program is solved exactly by branch-and-bound, and the
//! deployment controller realizes a feasible solution in the arena: cops
//! wait at sources, flood the robber's component, and play the
//! component-optimal strategy there; when the robber escapes downstream the
//! cops follow (every escape component is fed by a superset of sources).

use std::collections::VecDeque;

use serde::Serialize;

use crate::game::{CopController, GameConfig, GameState};
use crate::graph::{Graph, VertexSet};
use crate::solver::{cop_number_connected, weak_components, Solved, SolveError};

pub struct ReductionInstance {
    /// Vertex lists of the strongly connected components, topological order.
    pub parts: Vec<Vec<usize>>,
    /// Acyclic condensation; vertex j stands for parts[j].
    pub condensation: Graph,
    /// c_j: cop number of the component's induced subdigraph.
    pub component_cop_numbers: Vec<usize>,
    /// Condensation vertices of in-degree zero.
    pub sources: Vec<usize>,
    /// source_sets[j]: indices into `sources` that reach j (j itself included
    /// when j is a source).
    pub source_sets: Vec<Vec<usize>>,
    /// Per-component winning fixpoints (local vertex numbering).
    pub solved: Vec<Solved>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionSolution {
    /// Cops parked on each source, parallel to `sources`.
    pub assignment: Vec<usize>,
    pub total_cops: usize,
}

/// Serializable summary (condensation edges, c_j, S_j) for reports.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub parts: Vec<Vec<usize>>,
    pub condensation_edges: Vec<(usize, usize)>,
    pub component_cop_numbers: Vec<usize>,
    pub sources: Vec<usize>,
    pub source_sets: Vec<Vec<usize>>,
}

impl ReductionInstance {
    pub fn summary(&self) -> InstanceSummary {
        InstanceSummary {
            parts: self.parts.clone(),
            condensation_edges: self.condensation.edges(),
            component_cop_numbers: self.component_cop_numbers.clone(),
            sources: self.sources.clone(),
            source_sets: self.source_sets.clone(),
        }
    }
}

/// Builds the instance with a caller-supplied component solver.
pub fn build_instance_with(
    d: &Graph,
    mut component_solver: impl FnMut(&Graph) -> Result<Solved, SolveError>,
) -> Result<ReductionInstance, SolveError> {
    let (comp_sets, condensation) = d.strong_components().expect("directed input");
    let parts: Vec<Vec<usize>> = comp_sets.iter().map(|s| s.to_vec()).collect();
    let mut component_cop_numbers = Vec::with_capacity(parts.len());
    let mut solved = Vec::with_capacity(parts.len());
    for set in &comp_sets {
        let (sub, _) = d.induced(set);
        let s = component_solver(&sub)?;
        component_cop_numbers.push(s.cop_count);
        solved.push(s);
    }
    let m = condensation.n();
    let mut indeg = vec![0usize; m];
    for (_, v) in condensation.edges() {
        indeg[v] += 1;
    }
    let sources: Vec<usize> = (0..m).filter(|&j| indeg[j] == 0).collect();
    // reachability from each source (indices into `sources`)
    let mut source_sets = vec![Vec::new(); m];
    for (si, &s) in sources.iter().enumerate() {
        let mut seen = VertexSet::new(m);
        seen.insert(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in condensation.neighbors(u) {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        for j in seen.iter() {
            source_sets[j].push(si);
        }
    }
    debug_assert!(source_sets.iter().all(|s| !s.is_empty()));
    Ok(ReductionInstance {
        parts,
        condensation,
        component_cop_numbers,
        sources,
        source_sets,
        solved,
    })
}

/// Default instance builder: exact solver per component.
pub fn build_instance(d: &Graph, budget: usize) -> Result<ReductionInstance, SolveError> {
    build_instance_with(d, |sub| {
        cop_number_connected(sub, crate::game::Speed::Finite(1), budget)
    })
}

/// Exact minimum of Σxᵢ subject to Σ_{i ∈ Sⱼ} xᵢ ≥ cⱼ for every j, by
/// branch-and-bound in lexicographic order (so the returned optimum is the
/// lexicographically smallest one).
pub fn solve_covering(inst: &ReductionInstance) -> ReductionSolution {
    let m = inst.sources.len();
    let max_c = inst.component_cop_numbers.iter().copied().max().unwrap_or(0);
    if m == 0 || max_c == 0 {
        return ReductionSolution { assignment: vec![0; m], total_cops: 0 };
    }
    // per source: the constraints it participates in
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut x = vec![0usize; m];

    fn rec(
        i: usize,
        sum: usize,
        x: &mut Vec<usize>,
        inst: &ReductionInstance,
        max_c: usize,
        best: &mut Option<(usize, Vec<usize>)>,
    ) {
        let m = inst.sources.len();
        // bound: remaining demand that unassigned sources must still cover
        let mut rest_needed = 0usize;
        for (j, &c) in inst.component_cop_numbers.iter().enumerate() {
            let assigned: usize =
                inst.source_sets[j].iter().filter(|&&si| si < i).map(|&si| x[si]).sum();
            let open = inst.source_sets[j].iter().any(|&si| si >= i);
            if assigned < c {
                if !open {
                    return; // constraint j can no longer be met
                }
                rest_needed = rest_needed.max(c - assigned);
            }
        }
        if let Some((bt, _)) = best {
            if sum + rest_needed >= *bt {
                return; // cannot strictly improve; earlier find is lex-smaller
            }
        }
        if i == m {
            *best = Some((sum, x.clone()));
            return;
        }
        for v in 0..=max_c {
            x[i] = v;
            rec(i + 1, sum + v, x, inst, max_c, best);
        }
        x[i] = 0;
    }
    rec(0, 0, &mut x, inst, max_c, &mut best);
    let (total_cops, assignment) = best.expect("x_i = max_c is always feasible");
    ReductionSolution { assignment, total_cops }
}

/// Cop number of an arbitrary digraph through the reduction: per weakly
/// connected part, condense, solve components exactly, cover; sum.
///
/// This is an exact-by-construction *upper* bound: the covering solution
/// always suffices (the deployment strategy realizes it), but it can exceed
/// the true cop number when cross-component arcs let cops attack a component
/// from upstream without paying its standalone cop number — e.g. a source
/// vertex with arcs onto every vertex of a directed 3-cycle needs one cop,
/// while the covering pays the cycle's cop number of two.
pub fn cop_number_via_reduction(d: &Graph, budget: usize) -> Result<usize, SolveError> {
    assert!(d.is_directed(), "reduction applies to digraphs");
    let mut total = 0;
    for part in weak_components(d) {
        let (sub, _) = d.induced(&part);
        let inst = build_instance(&sub, budget)?;
        total += solve_covering(&inst).total_cops;
    }
    Ok(total)
}

/// Checks a solution against its instance's constraints.
pub fn check_solution(inst: &ReductionInstance, sol: &ReductionSolution) -> bool {
    sol.assignment.len() == inst.sources.len()
        && sol.total_cops == sol.assignment.iter().sum::<usize>()
        && inst.component_cop_numbers.iter().enumerate().all(|(j, &c)| {
            inst.source_sets[j].iter().map(|&si| sol.assignment[si]).sum::<usize>() >= c
        })
}

// --------------------------------------------------------- deployment

/// Arena controller realizing a covering solution on a weakly connected
/// digraph. Total cops = sol.total_cops, never exceeded.
pub struct DeploymentCop {
    parts: Vec<Vec<usize>>,
    comp_of: Vec<usize>,
    solved: Vec<Solved>,
    placement: Vec<usize>,
    positions: Vec<usize>,
    /// component currently being flooded/played, designated cop indices
    hunt: Option<(usize, Vec<usize>)>,
    routes: Vec<(usize, VecDeque<usize>)>,
}

impl DeploymentCop {
    pub fn new(d: &Graph, inst: ReductionInstance, sol: &ReductionSolution) -> Self {
        assert!(check_solution(&inst, sol), "infeasible covering solution");
        let mut comp_of = vec![usize::MAX; d.n()];
        for (j, part) in inst.parts.iter().enumerate() {
            for &v in part {
                comp_of[v] = j;
            }
        }
        let mut placement = Vec::new();
        for (si, &s) in inst.sources.iter().enumerate() {
            let home = inst.parts[s][0];
            placement.extend(std::iter::repeat(home).take(sol.assignment[si]));
        }
        DeploymentCop {
            parts: inst.parts,
            comp_of,
            solved: inst.solved,
            positions: placement.clone(),
            placement,
            hunt: None,
            routes: Vec::new(),
        }
    }

    fn plan_hunt(&mut self, g: &Graph, robber: usize) {
        let j = self.comp_of[robber];
        let c_j = self.solved[j].cop_count;
        // slots: the component-optimal winning placement, global ids
        let slots: Vec<usize> = self.solved[j]
            .placement
            .as_ref()
            .expect("component fixpoint is winning")
            .iter()
            .map(|&lv| self.parts[j][lv])
            .collect();
        // designate the first c_j cops that can reach the component
        let rev = g.reversed();
        let mut reach_any = VertexSet::new(g.n());
        for &v in &self.parts[j] {
            reach_any.insert(v);
        }
        // vertices from which some part-j vertex is reachable
        let reach_any = {
            let mut seen = reach_any.clone();
            let mut stack: Vec<usize> = seen.iter().collect();
            while let Some(u) = stack.pop() {
                for &w in rev.neighbors(u) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen
        };
        let designated: Vec<usize> = (0..self.positions.len())
            .filter(|&ci| reach_any.contains(self.positions[ci]))
            .take(c_j)
            .collect();
        assert_eq!(
            designated.len(),
            c_j,
            "covering feasibility must supply {} reachable cops",
            c_j
        );
        self.routes.clear();
        for (slot_idx, &ci) in designated.iter().enumerate() {
            let path = bfs_path(g, self.positions[ci], slots[slot_idx])
                .expect("slot reachable from designated cop");
            if !path.is_empty() {
                self.routes.push((ci, path.into()));
            }
        }
        self.hunt = Some((j, designated));
    }

    fn strategy_move(&mut self, g: &Graph, robber: usize) {
        let (j, designated) = self.hunt.clone().expect("hunt planned");
        let part = &self.parts[j];
        let (sub, ids) = g.induced(&VertexSet::from_iter(g.n(), part.iter().copied()));
        let local = |v: usize| ids.binary_search(&v).expect("vertex in component");
        // raw stays parallel to `designated`; the decision wants it sorted
        let raw_local: Vec<usize> =
            designated.iter().map(|&ci| local(self.positions[ci])).collect();
        let cur_local = crate::game::canonical_cops(raw_local.clone());
        let target = self.solved[j].cop_decision(&sub, &cur_local, local(robber));
        // realize the multiset move per cop: match current cops to target
        // slots where staying or one edge suffices (exists by construction)
        let tgt: Vec<usize> = target.iter().map(|&lv| ids[lv]).collect();
        let assign = match_moves(&sub, &raw_local, &target)
            .expect("decision multiset reachable by one move per cop");
        for (pos_idx, tgt_idx) in assign {
            self.positions[designated[pos_idx]] = tgt[tgt_idx];
        }
    }
}

/// Shortest directed path from -> to, excluding `from`.
fn bfs_path(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    if from == to {
        return Some(vec![]);
    }
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut q = VecDeque::from([from]);
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

/// Matches current cop occurrences to target occurrences so that every move
/// is a stay or one edge (Kuhn matching on the occurrence bipartite graph).
fn match_moves(sub: &Graph, cur: &[usize], target: &[usize]) -> Option<Vec<(usize, usize)>> {
    let ok = |c: usize, t: usize| c == t || sub.has_edge(c, t);
    let k = cur.len();
    let mut match_t: Vec<Option<usize>> = vec![None; k];
    let mut match_c: Vec<Option<usize>> = vec![None; k];
    fn aug(
        i: usize,
        cur: &[usize],
        target: &[usize],
        ok: &dyn Fn(usize, usize) -> bool,
        match_t: &mut [Option<usize>],
        match_c: &mut [Option<usize>],
        vis: &mut [bool],
    ) -> bool {
        for t in 0..target.len() {
            if vis[t] || !ok(cur[i], target[t]) {
                continue;
            }
            vis[t] = true;
            if match_t[t].is_none()
                || aug(match_t[t].unwrap(), cur, target, ok, match_t, match_c, vis)
            {
                match_t[t] = Some(i);
                match_c[i] = Some(t);
                return true;
            }
        }
        false
    }
    for i in 0..k {
        let mut vis = vec![false; k];
        if !aug(i, cur, target, &ok, &mut match_t, &mut match_c, &mut vis) {
            return None;
        }
    }
    Some((0..k).map(|i| (i, match_c[i].unwrap())).collect())
}

impl CopController for DeploymentCop {
    fn place(&mut self, _g: &Graph, _cfg: &GameConfig) -> Vec<usize> {
        self.positions = self.placement.clone();
        self.hunt = None;
        self.routes.clear();
        self.positions.clone()
    }

    fn mv(&mut self, g: &Graph, _cfg: &GameConfig, s: &GameState, _round: usize) -> Vec<usize> {
        let robber = s.robber.expect("robber placed");
        let j = self.comp_of[robber];
        if self.hunt.as_ref().map(|(h, _)| *h) != Some(j) {
            self.plan_hunt(g, robber);
        }
        if self.routes.is_empty() {
            self.strategy_move(g, robber);
        } else {
            for (ci, path) in &mut self.routes {
                if let Some(next) = path.pop_front() {
                    self.positions[*ci] = next;
                }
            }
            self.routes.retain(|(_, p)| !p.is_empty());
        }
        self.positions.clone()
    }

    fn name(&self) -> &'static str {
        "deployment"
    }
}

/// Convenience: full pipeline from a weakly connected digraph to an arena
/// controller with its cop count.
pub fn deployment_controller(
    d: &Graph,
    budget: usize,
) -> Result<(DeploymentCop, usize), SolveError> {
    let inst = build_instance(d, budget)?;
    let sol = solve_covering(&inst);
    let total = sol.total_cops;
    Ok((DeploymentCop::new(d, inst, &sol), total))
}
