//! Graph and digraph representation plus the neighborhood, ball, boundary,
//! component, core, and expansion primitives the rest of the crate consumes.
//!
//! Vertices are identified by `0..n`. Undirected graphs store each edge in
//! both adjacency lists; digraphs additionally keep the reversed adjacency
//! so in-neighborhoods and in-balls are cheap.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("operation `{0}` requires an undirected graph")]
    DirectedInput(&'static str),
    #[error("operation `{0}` requires a directed graph")]
    UndirectedInput(&'static str),
    #[error("size cap {cap} exceeds n/2 = {limit}")]
    SizeCapTooLarge { cap: usize, limit: usize },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Set of vertices of a host graph, stored as a bitset.
///
/// Iteration and all exported orderings are ascending by vertex id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
    len: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
            len: 0,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(capacity: usize, iter: I) -> Self {
        let mut s = Self::new(capacity);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.capacity);
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity, "vertex {} out of range", v);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let present = self.words[w] >> b & 1 == 1;
        if present {
            self.words[w] &= !(1 << b);
            self.len -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity).filter(move |&v| self.contains(v))
    }

    /// Members in ascending order.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.capacity, other.capacity);
        self.len = 0;
        for (w, ow) in self.words.iter_mut().zip(&other.words) {
            *w |= ow;
            self.len += w.count_ones() as usize;
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// |self ∩ other| without materializing the intersection.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        assert_eq!(self.capacity, other.capacity);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Finite simple graph or digraph.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    directed: bool,
    adj: Vec<Vec<usize>>,
    /// In-neighbors; for undirected graphs this mirrors `adj`.
    radj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn undirected(n: usize) -> Self {
        Graph {
            n,
            directed: false,
            adj: vec![Vec::new(); n],
            radj: vec![Vec::new(); n],
        }
    }

    pub fn directed(n: usize) -> Self {
        Graph {
            n,
            directed: true,
            adj: vec![Vec::new(); n],
            radj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = if directed {
            Graph::directed(n)
        } else {
            Graph::undirected(n)
        };
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        g.sort_adjacency();
        Ok(g)
    }

    /// Adds an edge; for undirected graphs both directions are stored.
    /// Parallel edges are ignored, self-loops rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Ok(());
        }
        self.adj[u].push(v);
        self.radj[v].push(u);
        if !self.directed {
            self.adj[v].push(u);
            self.radj[u].push(v);
        }
        Ok(())
    }

    fn sort_adjacency(&mut self) {
        for l in self.adj.iter_mut().chain(self.radj.iter_mut()) {
            l.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self.adj.iter().map(Vec::len).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    /// Out-neighbors (all neighbors for undirected graphs).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.radj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges with `u < v` for undirected graphs, all arcs for digraphs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices outside `s` adjacent to some vertex of `s`. Undirected only.
    pub fn boundary(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        if self.directed {
            return Err(GraphError::DirectedInput("boundary"));
        }
        let mut out = VertexSet::new(self.n);
        for u in s.iter() {
            for &v in &self.adj[u] {
                if !s.contains(v) {
                    out.insert(v);
                }
            }
        }
        Ok(out)
    }

    /// Vertices outside `s` with a directed edge into `s`. Directed only.
    pub fn in_boundary(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        if !self.directed {
            return Err(GraphError::UndirectedInput("in_boundary"));
        }
        let mut out = VertexSet::new(self.n);
        for u in s.iter() {
            for &v in &self.radj[u] {
                if !s.contains(v) {
                    out.insert(v);
                }
            }
        }
        Ok(out)
    }

    /// All vertices within (directed) distance `r` of some vertex of `s`.
    /// For digraphs this is the out-ball; see [`Graph::ball_in`] for the in-ball.
    pub fn ball(&self, s: &VertexSet, r: usize) -> VertexSet {
        self.ball_impl(s, r, false)
    }

    /// In-ball: vertices that can reach `s` by a directed walk of length at most `r`.
    pub fn ball_in(&self, s: &VertexSet, r: usize) -> VertexSet {
        self.ball_impl(s, r, true)
    }

    fn ball_impl(&self, s: &VertexSet, r: usize, reversed: bool) -> VertexSet {
        let mut seen = s.clone();
        let mut frontier: Vec<usize> = s.iter().collect();
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                let nbrs = if reversed { &self.radj[u] } else { &self.adj[u] };
                for &v in nbrs {
                    if seen.insert(v) {
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// Connected components of an undirected graph, each sorted ascending,
    /// ordered by smallest member.
    pub fn components(&self) -> Result<Vec<VertexSet>, GraphError> {
        if self.directed {
            return Err(GraphError::DirectedInput("components"));
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    /// Strongly connected components in topological order of the condensation,
    /// plus the condensation digraph (one vertex per part, deduplicated arcs).
    pub fn strong_components(&self) -> Result<(Vec<VertexSet>, Graph), GraphError> {
        if !self.directed {
            return Err(GraphError::UndirectedInput("strong_components"));
        }
        // Iterative Tarjan.
        let n = self.n;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut counter = 0usize;

        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // (vertex, next child position)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut ci)) = call.last_mut() {
                if *ci < self.adj[v].len() {
                    let w = self.adj[v][*ci];
                    *ci += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp_of[w] = comps.len();
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comps.push(comp);
                    }
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                }
            }
        }

        // Tarjan emits components in reverse topological order.
        comps.reverse();
        let t = comps.len();
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = i;
            }
        }
        let mut cond = Graph::directed(t);
        for u in 0..n {
            for &v in &self.adj[u] {
                if comp_of[u] != comp_of[v] {
                    cond.add_edge(comp_of[u], comp_of[v])?;
                }
            }
        }
        cond.sort_adjacency();
        let parts = comps
            .into_iter()
            .map(|c| VertexSet::from_iter(n, c))
            .collect();
        Ok((parts, cond))
    }

    /// The unique maximal vertex set whose induced subgraph has minimum
    /// degree at least `k`, obtained by iterated peeling. Undirected only.
    pub fn k_core(&self, k: usize) -> Result<VertexSet, GraphError> {
        if self.directed {
            return Err(GraphError::DirectedInput("k_core"));
        }
        let mut alive = vec![true; self.n];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.adj[v].len()).collect();
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| deg[v] < k).collect();
        for &v in &queue {
            alive[v] = false;
        }
        while let Some(v) = queue.pop() {
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] < k {
                        alive[w] = false;
                        queue.push(w);
                    }
                }
            }
        }
        Ok(VertexSet::from_iter(
            self.n,
            (0..self.n).filter(|&v| alive[v]),
        ))
    }

    /// Searches for a set `S` with `1 <= |S| <= size_cap` and `|bd(S)| <= p|S|`
    /// (in-boundary for digraphs). Exhaustive over all subsets up to the cap,
    /// so `None` with `size_cap = floor(n/2)` certifies the graph is a
    /// p-expander (p-in-expander).
    pub fn expansion_witness(
        &self,
        p: f64,
        size_cap: usize,
    ) -> Result<Option<VertexSet>, GraphError> {
        let limit = self.n / 2;
        if size_cap > limit {
            return Err(GraphError::SizeCapTooLarge { cap: size_cap, limit });
        }
        if size_cap == 0 || self.n == 0 {
            return Ok(None);
        }
        // DFS over subsets in lexicographic order, maintaining for each vertex
        // the number of its (out-)neighbors inside S; the boundary size is the
        // number of outside vertices with a positive count.
        let mut nbr_count = vec![0u32; self.n];
        let mut in_s = vec![false; self.n];
        let mut chosen: Vec<usize> = Vec::new();
        let mut boundary = 0usize;

        struct Ctx<'a> {
            g: &'a Graph,
            p: f64,
            cap: usize,
        }
        // Returns the witness (as chosen stack) on success.
        fn dfs(
            ctx: &Ctx,
            next: usize,
            chosen: &mut Vec<usize>,
            in_s: &mut [bool],
            nbr_count: &mut [u32],
            boundary: &mut usize,
        ) -> bool {
            if !chosen.is_empty()
                && *boundary as f64 <= ctx.p * chosen.len() as f64 + 1e-9
            {
                return true;
            }
            if chosen.len() == ctx.cap || next == ctx.g.n {
                return false;
            }
            for v in next..ctx.g.n {
                // include v
                chosen.push(v);
                in_s[v] = true;
                if nbr_count[v] > 0 {
                    *boundary -= 1;
                }
                // For digraphs the relevant boundary is the in-boundary:
                // outside vertices with an edge INTO S, i.e. in-neighbors of S.
                let touch = if ctx.g.directed {
                    &ctx.g.radj[v]
                } else {
                    &ctx.g.adj[v]
                };
                for &w in touch {
                    if !in_s[w] {
                        nbr_count[w] += 1;
                        if nbr_count[w] == 1 {
                            *boundary += 1;
                        }
                    }
                }
                if dfs(ctx, v + 1, chosen, in_s, nbr_count, boundary) {
                    return true;
                }
                // undo
                for &w in touch {
                    if !in_s[w] {
                        nbr_count[w] -= 1;
                        if nbr_count[w] == 0 {
                            *boundary -= 1;
                        }
                    }
                }
                if nbr_count[v] > 0 {
                    *boundary += 1;
                }
                in_s[v] = false;
                chosen.pop();
            }
            false
        }

        let ctx = Ctx {
            g: self,
            p,
            cap: size_cap,
        };
        if dfs(&ctx, 0, &mut chosen, &mut in_s, &mut nbr_count, &mut boundary) {
            Ok(Some(VertexSet::from_iter(self.n, chosen)))
        } else {
            Ok(None)
        }
    }

    /// Induced subgraph on `keep`, along with the map from new ids to the
    /// original vertex ids (ascending).
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = keep.iter().collect();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in ids.iter().enumerate() {
            back[old] = new;
        }
        let mut g = if self.directed {
            Graph::directed(ids.len())
        } else {
            Graph::undirected(ids.len())
        };
        for (new, &old) in ids.iter().enumerate() {
            for &v in &self.adj[old] {
                if keep.contains(v) && (self.directed || old < v) {
                    g.add_edge(new, back[v]).unwrap();
                }
            }
        }
        g.sort_adjacency();
        (g, ids)
    }

    /// Graph with every arc reversed (identity for undirected graphs).
    pub fn reversed(&self) -> Graph {
        Graph {
            n: self.n,
            directed: self.directed,
            adj: self.radj.clone(),
            radj: self.adj.clone(),
        }
    }

    /// Single-source BFS distances; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Parses the graph text format: first line `n <count> <directed|undirected>`,
    /// then one `u v` pair per line; undirected files list each edge once.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_err = |line: usize, msg: &str| GraphError::Parse {
            line,
            msg: msg.into(),
        };
        if parts.next() != Some("n") {
            return Err(parse_err(line_no, "expected header `n <count> <directed|undirected>`"));
        }
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(line_no, "bad vertex count"))?;
        let directed = match parts.next() {
            Some("directed") => true,
            Some("undirected") => false,
            _ => return Err(parse_err(line_no, "expected `directed` or `undirected`")),
        };
        let mut g = if directed {
            Graph::directed(n)
        } else {
            Graph::undirected(n)
        };
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| parse_err(line, "expected `u v`"))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| parse_err(line, "expected `u v`"))?;
            if it.next().is_some() {
                return Err(parse_err(line, "trailing tokens after `u v`"));
            }
            g.add_edge(u, v).map_err(|e| parse_err(line, &e.to_string()))?;
        }
        g.sort_adjacency();
        Ok(g)
    }

    /// Serializes into the text format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n {} {}\n",
            self.n,
            if self.directed { "directed" } else { "undirected" }
        );
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, {}, m={})",
            self.n,
            if self.directed { "directed" } else { "undirected" },
            self.edge_count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, false, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, false, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, false, &e).unwrap()
    }

    pub(crate) fn petersen() -> Graph {
        // outer 5-cycle, inner 5-star, spokes
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, 5 + i));
        }
        Graph::from_edges(10, false, &e).unwrap()
    }

    fn vs(g: &Graph, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(g.n(), vs.iter().copied())
    }

    #[test]
    fn boundary_basics() {
        let p3 = path(3);
        assert_eq!(p3.boundary(&vs(&p3, &[0])).unwrap().to_vec(), vec![1]);
        let c4 = cycle(4);
        assert_eq!(c4.boundary(&vs(&c4, &[0, 1])).unwrap().to_vec(), vec![2, 3]);
        let k5 = complete(5);
        assert_eq!(k5.boundary(&vs(&k5, &[1, 3])).unwrap().to_vec(), vec![0, 2, 4]);
    }

    #[test]
    fn boundary_rejects_directed() {
        let d = Graph::from_edges(2, true, &[(0, 1)]).unwrap();
        assert!(matches!(
            d.boundary(&vs(&d, &[0])),
            Err(GraphError::DirectedInput(_))
        ));
    }

    #[test]
    fn in_boundary_basics() {
        let dp = Graph::from_edges(3, true, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(dp.in_boundary(&vs(&dp, &[2])).unwrap().to_vec(), vec![1]);
        let c3 = Graph::from_edges(3, true, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c3.in_boundary(&vs(&c3, &[0])).unwrap().to_vec(), vec![2]);
        assert!(c3.in_boundary(&VertexSet::full(3)).unwrap().is_empty());
        let u = path(3);
        assert!(matches!(
            u.in_boundary(&vs(&u, &[0])),
            Err(GraphError::UndirectedInput(_))
        ));
    }

    #[test]
    fn ball_basics() {
        let p5 = path(5);
        assert_eq!(p5.ball(&vs(&p5, &[2]), 1).to_vec(), vec![1, 2, 3]);
        assert_eq!(p5.ball(&VertexSet::full(5), 0).to_vec(), vec![0, 1, 2, 3, 4]);
        let pet = petersen();
        assert_eq!(pet.ball(&vs(&pet, &[0]), 2).len(), 10);
    }

    #[test]
    fn directed_balls() {
        let dp = Graph::from_edges(3, true, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(dp.ball(&vs(&dp, &[0]), 1).to_vec(), vec![0, 1]);
        assert_eq!(dp.ball_in(&vs(&dp, &[2]), 1).to_vec(), vec![1, 2]);
    }

    #[test]
    fn components_basics() {
        let g = Graph::from_edges(4, false, &[(0, 1), (1, 2)]).unwrap();
        let comps = g.components().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(comps[1].to_vec(), vec![3]);
        let empty = Graph::undirected(4);
        assert_eq!(empty.components().unwrap().len(), 4);
        assert_eq!(path(5).components().unwrap().len(), 1);
    }

    #[test]
    fn strong_components_basics() {
        let c3 = Graph::from_edges(3, true, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let (parts, cond) = c3.strong_components().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(cond.n(), 1);

        let e2 = Graph::from_edges(2, true, &[(0, 1)]).unwrap();
        let (parts, cond) = e2.strong_components().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].to_vec(), vec![0]);
        assert_eq!(cond.edges(), vec![(0, 1)]);

        // two directed triangles joined by one edge
        let g = Graph::from_edges(
            6,
            true,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)],
        )
        .unwrap();
        let (parts, cond) = g.strong_components().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(cond.edges(), vec![(0, 1)]);
        assert_eq!(parts[0].to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn condensation_is_acyclic() {
        // random-ish handmade digraph
        let g = Graph::from_edges(
            7,
            true,
            &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (3, 4), (4, 5), (5, 6), (6, 4)],
        )
        .unwrap();
        let (_, cond) = g.strong_components().unwrap();
        // topological order exists iff acyclic; parts come topologically sorted,
        // so all condensation arcs must go forward.
        for (u, v) in cond.edges() {
            assert!(u < v, "condensation arc {}->{} goes backwards", u, v);
        }
    }

    #[test]
    fn k_core_basics() {
        let k4 = complete(4);
        assert_eq!(k4.k_core(3).unwrap().len(), 4);
        let star = Graph::from_edges(5, false, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(star.k_core(2).unwrap().is_empty());
        // K4 plus pendant
        let mut e = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        e.push((3, 4));
        let g = Graph::from_edges(5, false, &e).unwrap();
        assert_eq!(g.k_core(3).unwrap().to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn k_core_order_independent() {
        // peel with reversed vertex ordering and compare
        let g = Graph::from_edges(
            8,
            false,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7)],
        )
        .unwrap();
        let core = g.k_core(2).unwrap();
        // naive alternative peel: repeatedly delete the largest-id low-degree vertex
        let mut alive: Vec<bool> = vec![true; g.n()];
        loop {
            let mut removed = false;
            for v in (0..g.n()).rev() {
                if alive[v] {
                    let d = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
                    if d < 2 {
                        alive[v] = false;
                        removed = true;
                        break;
                    }
                }
            }
            if !removed {
                break;
            }
        }
        let alt: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
        assert_eq!(core.to_vec(), alt);
    }

    #[test]
    fn expansion_witness_examples() {
        let c8 = cycle(8);
        let w = c8.expansion_witness(0.5, 4).unwrap().unwrap();
        assert_eq!(w.len(), 4);
        let bd = c8.boundary(&w).unwrap();
        assert!(bd.len() as f64 <= 0.5 * w.len() as f64 + 1e-9);

        let k5 = complete(5);
        assert!(k5.expansion_witness(0.5, 2).unwrap().is_none());

        assert!(c8.expansion_witness(0.4, 4).unwrap().is_none());
    }

    #[test]
    fn expansion_witness_cap_rejected() {
        let c8 = cycle(8);
        assert!(matches!(
            c8.expansion_witness(0.5, 5),
            Err(GraphError::SizeCapTooLarge { .. })
        ));
    }

    #[test]
    fn single_vertex_degeneracies() {
        let g = Graph::undirected(1);
        assert_eq!(g.components().unwrap().len(), 1);
        // no nonempty S with |S| <= n/2 = 0 exists, so it is a p-expander
        assert!(g.expansion_witness(0.9, 0).unwrap().is_none());
        let all = VertexSet::full(1);
        assert!(g.boundary(&all).unwrap().is_empty());
    }

    #[test]
    fn parse_roundtrip() {
        let text = "n 4 undirected\n0 1\n1 2\n2 3\n3 0\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        // to_text emits edges in sorted order; a re-parse is identical
        assert_eq!(g.to_text(), "n 4 undirected\n0 1\n0 3\n1 2\n2 3\n");
        let g2 = Graph::parse(&g.to_text()).unwrap();
        assert_eq!(g2.to_text(), g.to_text());

        let bad = Graph::parse("n 3 undirected\n0 x\n");
        assert!(matches!(bad, Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn directed_parse() {
        let g = Graph::parse("n 2 directed\n0 1\n").unwrap();
        assert!(g.is_directed());
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(1, 0));
    }
}
