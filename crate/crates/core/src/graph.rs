//! Simple undirected graphs over dense vertex ids `0..n`.

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Panics on loops or out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts edge `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge {u} {v} out of range");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    /// Subgraph induced by `keep` (any order, duplicates ignored). Returns the graph and
    /// the map from new ids to old ids; new ids follow ascending old ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old: Vec<usize> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Graph::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            g.adj[i] = self.adj[v].iter().filter_map(|&w| (new_of[w] != usize::MAX).then_some(new_of[w])).collect();
        }
        (g, old)
    }

    /// Connected components of the graph minus the vertices flagged in `removed`.
    /// Each component is sorted; components are ordered by their smallest vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the whole graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.n()])
    }
}

/// Boolean membership mask of length `n` for a vertex list.
pub fn mask_of(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v] = true;
    }
    mask
}
