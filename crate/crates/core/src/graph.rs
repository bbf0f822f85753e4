//! Simple undirected graphs and the structural queries the bounds need.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// A simple undirected graph on vertices `0..n`.
///
/// The adjacency relation is stored as a dense boolean matrix; the graphs
/// handled here are small (tens of vertices).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices { need: 1, got: 0 });
        }
        Ok(Graph {
            n,
            adj: vec![false; n * n],
            m: 0,
        })
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u * self.n + v] {
            return Err(Error::DuplicateEdge { u, v });
        }
        self.set(u, v, true);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let was = self.adj[u * self.n + v];
        self.adj[u * self.n + v] = on;
        self.adj[v * self.n + u] = on;
        match (was, on) {
            (false, true) => self.m += 1,
            (true, false) => self.m -= 1,
            _ => {}
        }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|&&b| b).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter_map(|(w, &b)| b.then_some(w))
    }

    fn row(&self, v: usize) -> &[bool] {
        &self.adj[v * self.n..(v + 1) * self.n]
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| self.has_edge(u, v).then_some((u, v)))
        })
    }

    /// The graph on the same vertices whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                adj[u * n + v] = u != v && !self.adj[u * n + v];
            }
        }
        Graph {
            n,
            adj,
            m: n * (n - 1) / 2 - self.m,
        }
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Largest shortest-path distance; 0 for a single vertex.
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs_distances(s) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// `Some(r)` if every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == r).then_some(r)
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * (self.n - 1) / 2
    }

    /// True if the graph is `K_{n1,...,ns}` with `s >= 2` parts and at least
    /// one non-edge, i.e. its complement is a disjoint union of `s` cliques
    /// and the graph itself is not complete.
    pub fn is_complete_multipartite(&self) -> bool {
        if self.is_complete() {
            return false;
        }
        let comp = self.complement();
        let mut part = vec![usize::MAX; self.n];
        let mut parts = 0;
        for s in 0..self.n {
            if part[s] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = comp
                .bfs_distances(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            for &a in &members {
                part[a] = parts;
                for &b in &members {
                    if a != b && !comp.has_edge(a, b) {
                        return false;
                    }
                }
            }
            parts += 1;
        }
        parts >= 2
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        if self.n < 2 {
            return Err(Error::TooFewVertices {
                need: 2,
                got: self.n,
            });
        }
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegreeProfile {
            delta1: degrees[0],
            delta2: degrees[1],
            degrees,
        })
    }
}

/// Sorted degree sequence with the two largest entries broken out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// Non-increasing.
    pub degrees: Vec<usize>,
    pub delta1: usize,
    /// Second entry of the sorted sequence, so equal to `delta1` when two
    /// vertices share the maximum degree.
    pub delta2: usize,
}

/// Declarative descriptor for the standard graphs used in sweeps and fixtures.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphFamily {
    Complete(usize),
    CompleteMultipartite(Vec<usize>),
    Cycle(usize),
    Path(usize),
    /// `K_{1,n-1}` with centre 0.
    Star(usize),
    Petersen,
    RandomGnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl GraphFamily {
    pub fn generate(&self) -> Result<Graph> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match *self {
            GraphFamily::Complete(n) => {
                let mut g = Graph::empty(n)?;
                for v in 1..n {
                    for u in 0..v {
                        g.set(u, v, true);
                    }
                }
                Ok(g)
            }
            GraphFamily::CompleteMultipartite(ref parts) => {
                if parts.len() < 2 {
                    return bad(format!(
                        "multipartite needs at least 2 parts, got {}",
                        parts.len()
                    ));
                }
                if parts.contains(&0) {
                    return bad("multipartite part sizes must be positive".into());
                }
                let n = parts.iter().sum();
                let mut label = Vec::with_capacity(n);
                for (i, &size) in parts.iter().enumerate() {
                    label.extend(std::iter::repeat_n(i, size));
                }
                let mut g = Graph::empty(n)?;
                for v in 1..n {
                    for u in 0..v {
                        if label[u] != label[v] {
                            g.set(u, v, true);
                        }
                    }
                }
                Ok(g)
            }
            GraphFamily::Cycle(n) => {
                if n < 3 {
                    return bad(format!("cycle needs n >= 3, got {n}"));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            GraphFamily::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
            GraphFamily::Star(n) => {
                if n < 2 {
                    return bad(format!("star needs n >= 2, got {n}"));
                }
                Graph::from_edges(n, (1..n).map(|i| (0, i)))
            }
            GraphFamily::Petersen => {
                let outer = (0..5).map(|i| (i, (i + 1) % 5));
                let spokes = (0..5).map(|i| (i, i + 5));
                let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
                Graph::from_edges(10, outer.chain(spokes).chain(inner))
            }
            GraphFamily::RandomGnp { n, p, seed } => {
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("edge probability {p} outside [0, 1]"));
                }
                let mut rng = SplitMix64::new(seed);
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.next_f64() < p {
                            g.set(u, v, true);
                        }
                    }
                }
                Ok(g)
            }
        }
    }
}

/// Number of unordered vertex pairs, i.e. bits in an adjacency mask.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Builds the labeled graph whose edge set is encoded by `mask`.
///
/// Bit `k` stands for the `k`-th pair in column order
/// `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`, the same order graph6 uses.
pub fn graph_from_mask(n: usize, mask: u64) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                g.set(u, v, true);
            }
            bit += 1;
        }
    }
    Ok(g)
}

pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Connected labeled graphs on `n` vertices whose adjacency masks lie in
/// `start..end`, in ascending mask order.
#[derive(Debug, Clone)]
pub struct ConnectedGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl ConnectedGraphs {
    /// Total number of masks for order `n`.
    pub fn mask_limit(n: usize) -> u64 {
        1u64 << pair_count(n)
    }

    /// Restricts the enumeration to a mask range, for sharding across workers.
    pub fn range(n: usize, start: u64, end: u64) -> Result<Self> {
        if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
            return Err(Error::EnumerationRange(n));
        }
        Ok(ConnectedGraphs {
            n,
            next: start,
            end: end.min(Self::mask_limit(n)),
        })
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let g = graph_from_mask(self.n, mask).ok()?;
            if g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}

/// All connected labeled graphs on `n` vertices, `1 <= n <= 8`, in
/// ascending adjacency-mask order. No isomorphism reduction is done.
pub fn enumerate_connected(n: usize) -> Result<ConnectedGraphs> {
    ConnectedGraphs::range(n, 0, u64::MAX)
}

/// All labeled `r`-regular graphs on `n` vertices (connected or not).
///
/// Backtracks over vertex pairs in lexicographic order, so the output order
/// is deterministic.
pub fn enumerate_regular(n: usize, r: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER + 2 {
        return Err(Error::EnumerationRange(n));
    }
    if r >= n || (n * r) % 2 == 1 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut g = Graph::empty(n)?;
    let mut deg = vec![0usize; n];
    regular_step(&pairs, 0, r, &mut g, &mut deg, &mut out);
    Ok(out)
}

fn regular_step(
    pairs: &[(usize, usize)],
    k: usize,
    r: usize,
    g: &mut Graph,
    deg: &mut [usize],
    out: &mut Vec<Graph>,
) {
    let n = deg.len();
    if k == pairs.len() {
        if deg.iter().all(|&d| d == r) {
            out.push(g.clone());
        }
        return;
    }
    let (u, v) = pairs[k];
    // Pairs (u, v..n) are the last chances for u to reach degree r.
    let remaining_for_u = n - v;
    if deg[u] + remaining_for_u < r {
        return;
    }
    if deg[u] < r && deg[v] < r {
        g.set(u, v, true);
        deg[u] += 1;
        deg[v] += 1;
        regular_step(pairs, k + 1, r, g, deg, out);
        deg[u] -= 1;
        deg[v] -= 1;
        g.set(u, v, false);
    }
    if deg[u] + remaining_for_u > r {
        regular_step(pairs, k + 1, r, g, deg, out);
    }
}
