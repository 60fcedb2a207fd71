//! Immutable simple undirected graphs and the metric primitives the
//! strategies are built from: multi-source BFS, balls, geodesics,
//! diameter, girth and vertex deletion.
//!
//! Vertices are always `0..n`. Adjacency lists are sorted, which together
//! with "lowest id first" tie-breaking makes every geodesic and every
//! BFS tree reproducible.

use std::collections::VecDeque;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Per-vertex hop distance; `None` marks an unreachable vertex.
pub type Distances = Vec<Option<usize>>;

/// Fixed-width membership set over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::new(n);
        s.insert(v);
        s
    }

    /// Panics if any member is `>= n`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Size of the universe, not the cardinality.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        self.check_universe(other);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn check_universe(&self, other: &VertexSet) {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Result of deleting vertices: the relabelled induced subgraph and maps
/// in both directions.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges (in
    /// either orientation) and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    u.min(w[0]),
                    u.max(w[0])
                )));
            }
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
        })
    }

    /// Builds a graph from adjacency lists, which must already be symmetric
    /// and free of loops and repeats. Lists need not be sorted.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Graph> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut degree_sum = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated neighbour at {u}")));
            }
            if list.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGraph(format!(
                    "neighbour out of range at {u}"
                )));
            }
            if list.binary_search(&u).is_ok() {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            degree_sum += list.len();
        }
        for u in 0..n {
            for &v in &adj[u] {
                if adj[v].binary_search(&u).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "asymmetric adjacency: {v} in adj({u}) but not {u} in adj({v})"
                    )));
                }
            }
        }
        Ok(Graph {
            adj,
            edge_count: degree_sum / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `u == v` or `u ~ v`: the moves allowed to any agent in one turn.
    pub fn is_move(&self, from: usize, to: usize) -> bool {
        from == to || self.has_edge(from, to)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn bfs_distances(&self, sources: &VertexSet) -> Result<Distances> {
        if sources.is_empty() {
            return Err(Error::invalid("bfs needs at least one source"));
        }
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        for s in sources.iter() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn bfs_from(&self, v: usize) -> Distances {
        self.bfs_distances(&VertexSet::singleton(self.vertex_count(), v))
            .expect("singleton source is nonempty")
    }

    /// Vertices within distance `radius` of `centre`.
    pub fn ball(&self, centre: &VertexSet, radius: usize) -> Result<VertexSet> {
        if centre.is_empty() {
            return Err(Error::invalid("ball around an empty set"));
        }
        let dist = self.bfs_distances(centre)?;
        Ok(VertexSet::from_vertices(
            self.vertex_count(),
            dist.iter()
                .enumerate()
                .filter(|(_, d)| matches!(d, Some(d) if *d <= radius))
                .map(|(v, _)| v),
        ))
    }

    /// The lexicographically least geodesic from `u` to `v`: at every step the
    /// lowest-id neighbour that is one hop closer to `v` is taken.
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("vertex out of range 0..{n}")));
        }
        let to_v = self.bfs_from(v);
        self.descend(u, &to_v)
            .ok_or(Error::NoPath { from: u, to: v })
    }

    /// Walks from `u` down the distance field `dist` (lowest id first) until
    /// it reaches a zero. `None` if `u` is unreachable.
    pub fn descend(&self, u: usize, dist: &Distances) -> Option<Vec<usize>> {
        let mut d = dist[u]?;
        let mut path = vec![u];
        let mut cur = u;
        while d > 0 {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| dist[w] == Some(d - 1))
                .expect("bfs field has a predecessor");
            path.push(cur);
            d -= 1;
        }
        Some(path)
    }

    /// Eccentricity of `v` inside its component.
    pub fn eccentricity(&self, v: usize) -> usize {
        self.bfs_from(v)
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            let dist = self.bfs_from(v);
            for d in dist {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// A pair realizing the diameter of the component of vertex 0 (exact,
    /// all-pairs), lowest ids first among ties.
    pub fn diametral_pair(&self) -> (usize, usize) {
        let mut best = (0, 0, 0);
        for u in 0..self.vertex_count() {
            for (v, d) in self.bfs_from(u).iter().enumerate() {
                if let Some(d) = *d {
                    if d > best.0 {
                        best = (d, u, v);
                    }
                }
            }
        }
        (best.1, best.2)
    }

    /// Double BFS sweep: from `start` to its farthest vertex `a`, then to the
    /// farthest vertex from `a`. Lower bound on the diameter of the component.
    pub fn double_sweep(&self, start: usize) -> (usize, usize) {
        let far = |dist: &Distances| {
            let mut best = (0, start);
            for (v, d) in dist.iter().enumerate() {
                if let Some(d) = *d {
                    if d > best.0 {
                        best = (d, v);
                    }
                }
            }
            best.1
        };
        let a = far(&self.bfs_from(start));
        let b = far(&self.bfs_from(a));
        (a, b)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn component_of(&self, v: usize) -> VertexSet {
        let dist = self.bfs_from(v);
        VertexSet::from_vertices(
            self.vertex_count(),
            dist.iter()
                .enumerate()
                .filter(|(_, d)| d.is_some())
                .map(|(u, _)| u),
        )
    }

    /// Components, each listed once, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.vertex_count());
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if !seen.contains(v) {
                let c = self.component_of(v);
                seen = seen.union(&c);
                out.push(c);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.vertex_count()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![None; self.vertex_count()];
        for s in 0..self.vertex_count() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Removes `removed` and relabels the survivors in increasing order.
    pub fn delete_vertices(&self, removed: &VertexSet) -> Result<Subgraph> {
        let keep = VertexSet::full(self.vertex_count()).difference(removed);
        if keep.is_empty() {
            return Err(Error::invalid("cannot delete every vertex"));
        }
        Ok(self.induced_subgraph(&keep))
    }

    /// Induced subgraph on a nonempty vertex set, relabelled in increasing
    /// order of the original ids.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Subgraph {
        assert!(!keep.is_empty(), "induced subgraph on an empty set");
        let new_to_old = keep.to_vec();
        let mut old_to_new = vec![None; self.vertex_count()];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let adj = new_to_old
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| old_to_new[w]).collect())
            .collect();
        let graph = Graph::from_adjacency(adj).expect("induced subgraph of a simple graph");
        Subgraph {
            graph,
            old_to_new,
            new_to_old,
        }
    }

    /// Adds a vertex adjacent to every existing vertex (id `n`).
    pub fn with_universal_vertex(&self) -> Graph {
        let n = self.vertex_count();
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend((0..n).map(|v| (v, n)));
        Graph::from_edges(n + 1, &edges).expect("adding a universal vertex keeps the graph simple")
    }

    /// Canonical edge-list text: `n m`, then one `u v` line per edge with
    /// `u < v`, lexicographically sorted.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.vertex_count(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    /// Parses the edge-list format. Lines whose first non-blank character is
    /// `#` and blank lines are skipped; errors carry 1-based line numbers.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let mut fields = line.split_whitespace();
            let a = fields.next().unwrap();
            let b = fields
                .next()
                .ok_or_else(|| err(format!("expected two integers, got {line:?}")))?;
            if fields.next().is_some() {
                return Err(err(format!("expected two integers, got {line:?}")));
            }
            let parse = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| err(format!("not a non-negative integer: {tok:?}")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            match header {
                None => {
                    if a == 0 {
                        return Err(err("vertex count must be at least 1".into()));
                    }
                    header = Some((a, b));
                }
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(err(format!("more than the declared {m} edges")));
                    }
                    if a >= b {
                        return Err(err(format!("edge must satisfy u < v, got {a} {b}")));
                    }
                    if b >= n {
                        return Err(err(format!("vertex {b} out of range 0..{n}")));
                    }
                    if !seen.insert((a, b)) {
                        return Err(err(format!("duplicate edge {a} {b}")));
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: last_line.max(1),
            msg: "missing 'n m' header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line.max(1),
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            writeln!(s, "  {v};").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(s, "  {u} -- {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// SHA-256 of the canonical edge list, lowercase hex.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_edge_list().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied())
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1, 1], vec![0]]).is_err());
        assert!(Graph::from_edges(0, &[]).is_err());
    }

    #[test]
    fn bfs_examples() {
        let p5 = path(5);
        let d = p5.bfs_distances(&set(5, &[0])).unwrap();
        assert_eq!(d, vec![Some(0), Some(1), Some(2), Some(3), Some(4)]);
        let all = p5.bfs_distances(&VertexSet::full(5)).unwrap();
        assert!(all.iter().all(|d| *d == Some(0)));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two.bfs_distances(&set(4, &[0])).unwrap(),
            vec![Some(0), Some(1), None, None]
        );
        assert!(p5.bfs_distances(&VertexSet::new(5)).is_err());
    }

    #[test]
    fn ball_examples() {
        assert_eq!(
            path(5).ball(&set(5, &[0]), 2).unwrap().to_vec(),
            vec![0, 1, 2]
        );
        assert_eq!(
            cycle(5).ball(&set(5, &[2]), 1).unwrap().to_vec(),
            vec![1, 2, 3]
        );
        for v in 0..10 {
            assert_eq!(petersen().ball(&set(10, &[v]), 2).unwrap().len(), 10);
        }
        assert!(path(5).ball(&VertexSet::new(5), 1).is_err());
        assert_eq!(
            path(5).ball(&set(5, &[1, 3]), 0).unwrap().to_vec(),
            vec![1, 3]
        );
    }

    #[test]
    fn shortest_path_examples() {
        assert_eq!(path(5).shortest_path(0, 4).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(cycle(6).shortest_path(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(cycle(6).shortest_path(2, 2).unwrap(), vec![2]);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two.shortest_path(0, 3),
            Err(Error::NoPath { from: 0, to: 3 })
        );
    }

    #[test]
    fn diameter_girth_degree() {
        assert_eq!(cycle(6).diameter(), Some(3));
        assert_eq!(petersen().diameter(), Some(2));
        assert_eq!(Graph::from_edges(3, &[(0, 1)]).unwrap().diameter(), None);
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(petersen().min_degree(), 3);
        assert_eq!(path(6).girth(), None);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.girth(), Some(3));
        assert_eq!(k4.min_degree(), 3);
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(Graph::from_edges(1, &[]).unwrap().diameter(), Some(0));
    }

    #[test]
    fn deletion_and_components() {
        let sub = path(5).delete_vertices(&set(5, &[2])).unwrap();
        assert_eq!(sub.graph.vertex_count(), 4);
        assert_eq!(sub.graph.components().len(), 2);
        assert_eq!(sub.new_to_old, vec![0, 1, 3, 4]);

        let same = path(5).delete_vertices(&VertexSet::new(5)).unwrap();
        assert_eq!(same.graph, path(5));
        assert_eq!(same.new_to_old, vec![0, 1, 2, 3, 4]);

        let c6 = cycle(6).delete_vertices(&set(6, &[0, 1, 2, 3])).unwrap();
        assert_eq!(c6.graph, path(2));
        assert_eq!(c6.new_to_old, vec![4, 5]);

        assert!(path(3).delete_vertices(&VertexSet::full(3)).is_err());

        let p = path(5);
        assert_eq!(p.component_of(2).len(), 5);
        let cut = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(cut.component_of(3).to_vec(), vec![3, 4]);
        assert_eq!(cut.component_of(2).to_vec(), vec![2]);
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = petersen();
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(back, g);
        let commented = "# a comment\n3 2\n0 1\n# inner\n1 2\n";
        assert_eq!(Graph::parse_edge_list(commented).unwrap(), path(3));

        let bad = "3 2\n0 1\n1 x\n";
        assert!(matches!(
            Graph::parse_edge_list(bad),
            Err(Error::Parse { line: 3, .. })
        ));
        let reversed = "3 1\n1 0\n";
        assert!(matches!(
            Graph::parse_edge_list(reversed),
            Err(Error::Parse { line: 2, .. })
        ));
        let short = "3 2\n0 1\n";
        assert!(matches!(
            Graph::parse_edge_list(short),
            Err(Error::Parse { .. })
        ));
        let dup = "3 2\n0 1\n0 1\n";
        assert!(matches!(
            Graph::parse_edge_list(dup),
            Err(Error::Parse { line: 3, .. })
        ));
        let range = "3 1\n0 3\n";
        assert!(matches!(
            Graph::parse_edge_list(range),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn dot_export_lists_edges() {
        let dot = path(3).to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2;"));
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(129));
        assert!(!s.insert(129));
        s.insert(3);
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert!(s.remove(3));
        assert_eq!(s.complement().len(), 129);
        assert!(s.is_subset(&VertexSet::full(130)));
    }
}
