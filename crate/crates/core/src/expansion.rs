//! q-expansions in bipartite graphs, found by maximum flow.
//!
//! A q-expansion of `A` into `B` is a pair of nonempty sets `X ⊆ A`, `Y ⊆ B` with
//! `|Y| = q·|X|`, an assignment of `q` private vertices of `Y` to each member of `X`, and no
//! edge from `Y` to `A \ X`.

use crate::error::{Error, Result};
use std::collections::VecDeque;

/// A q-expansion. Indices refer to the two sides of the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub q: usize,
    /// Left vertices, ascending.
    pub x: Vec<usize>,
    /// Right vertices, ascending.
    pub y: Vec<usize>,
    /// `(a, the q right vertices assigned to a)`, one entry per member of `x`.
    pub assignment: Vec<(usize, Vec<usize>)>,
}

impl Expansion {
    /// Checks the defining properties against the bipartite graph.
    pub fn is_valid(&self, adj: &[Vec<usize>]) -> bool {
        if self.x.is_empty() || self.y.len() != self.q * self.x.len() {
            return false;
        }
        let mut used = Vec::new();
        for (a, bs) in &self.assignment {
            if self.x.binary_search(a).is_err() || bs.len() != self.q {
                return false;
            }
            if bs.iter().any(|b| !adj[*a].contains(b) || self.y.binary_search(b).is_err()) {
                return false;
            }
            used.extend_from_slice(bs);
        }
        used.sort_unstable();
        if used != self.y || self.assignment.len() != self.x.len() {
            return false;
        }
        adj.iter()
            .enumerate()
            .filter(|(a, _)| self.x.binary_search(a).is_err())
            .all(|(_, bs)| bs.iter().all(|b| self.y.binary_search(b).is_err()))
    }
}

const INF: usize = usize::MAX / 4;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: usize,
}

/// Dinic maximum flow on a small graph.
#[derive(Debug, Clone)]
struct FlowNetwork {
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork { edges: Vec::new(), out: vec![Vec::new(); n] }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: usize) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap });
        self.out[u].push(id);
        self.edges.push(Edge { to: u, cap: 0 });
        self.out[v].push(id + 1);
        id
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.out.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && level[to].is_none() {
                    level[to] = Some(level[u].unwrap() + 1);
                    queue.push_back(to);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: usize, level: &[Option<usize>], next: &mut [usize]) -> usize {
        if u == t {
            return limit;
        }
        while next[u] < self.out[u].len() {
            let e = self.out[u][next[u]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && level[to] == level[u].map(|l| l + 1) {
                let pushed = self.push(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.edges[e].cap -= pushed;
                    self.edges[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return total;
            }
            let mut next = vec![0; self.out.len()];
            loop {
                let pushed = self.push(s, t, INF, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }
}

/// Finds a q-expansion of the left side into the right side. `adj[a]` lists the right
/// neighbors (indices below `n_right`) of left vertex `a`.
///
/// Requires `n_right >= q * adj.len()`, `q >= 1` and no isolated right vertex. Each round
/// computes a maximum flow with capacity `q` per left vertex and 1 per right vertex; if
/// some left vertex is unsaturated, everything reachable from the source in the residual
/// graph is discarded and the search repeats on the rest.
pub fn q_expansion(adj: &[Vec<usize>], n_right: usize, q: usize) -> Result<Expansion> {
    let n_left = adj.len();
    if q == 0 || n_left == 0 || n_right < q * n_left {
        return Err(Error::PreconditionFailed(format!(
            "q-expansion needs q >= 1 and |B| >= q|A| (q = {q}, |A| = {n_left}, |B| = {n_right})"
        )));
    }
    let mut has_neighbor = vec![false; n_right];
    for bs in adj {
        for &b in bs {
            has_neighbor[b] = true;
        }
    }
    if has_neighbor.iter().any(|&h| !h) {
        return Err(Error::PreconditionFailed("isolated right vertex".into()));
    }
    let mut alive_a = vec![true; n_left];
    let mut alive_b = vec![true; n_right];
    loop {
        let left: Vec<usize> = (0..n_left).filter(|&a| alive_a[a]).collect();
        if left.is_empty() {
            return Err(Error::PreconditionFailed("no q-expansion exists".into()));
        }
        let s = n_left + n_right;
        let t = s + 1;
        let mut net = FlowNetwork::new(t + 1);
        let mut pair_edges = Vec::new();
        for &a in &left {
            net.add_edge(s, a, q);
            for &b in &adj[a] {
                if alive_b[b] {
                    pair_edges.push((a, b, net.add_edge(a, n_left + b, INF)));
                }
            }
        }
        for b in (0..n_right).filter(|&b| alive_b[b]) {
            net.add_edge(n_left + b, t, 1);
        }
        let flow = net.max_flow(s, t);
        if flow == q * left.len() {
            let mut assignment: Vec<(usize, Vec<usize>)> = left.iter().map(|&a| (a, Vec::new())).collect();
            for (a, b, e) in pair_edges {
                // Unit flow on a pair edge shows up as residual capacity on its reverse.
                if net.edges[e ^ 1].cap > 0 {
                    let slot = left.binary_search(&a).unwrap();
                    assignment[slot].1.push(b);
                }
            }
            let mut y: Vec<usize> = assignment.iter().flat_map(|(_, bs)| bs.iter().copied()).collect();
            y.sort_unstable();
            return Ok(Expansion { q, x: left, y, assignment });
        }
        let reach = net.levels(s);
        for a in left {
            if reach[a].is_some() {
                alive_a[a] = false;
            }
        }
        for b in 0..n_right {
            if reach[n_left + b].is_some() {
                alive_b[b] = false;
            }
        }
    }
}
