//! Exact solvers: brute-force oracles, the polynomial solver for caterpillar forests and
//! cycles, blocking-set tests, and the coloring branch for vertex-cover modulators.

use crate::caterpillar::{recognize_masked, CaterpillarStructure};
use crate::error::{Error, Result};
use crate::graph::{mask_of, Graph};
use crate::instance::Instance;
use crate::packing::solution_tight_packing;

/// Vertex limit of [`opt_brute`].
pub const BRUTE_LIMIT: usize = 24;
/// Vertex limit of [`enumerate_minimal_blocking_sets`].
pub const BLOCKING_LIMIT: usize = 16;
/// Hard ceiling for bitmask enumeration, whatever limit a caller asks for.
pub const MASK_CEILING: usize = 64;

/// A `d`-coc set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    /// Selected vertices, ascending.
    pub vertices: Vec<usize>,
}

impl Solution {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Whether every component of `G - s` has at most `d` vertices.
pub fn is_dcoc_set(graph: &Graph, d: usize, s: &[usize]) -> bool {
    graph.components_avoiding(&mask_of(graph.n(), s)).iter().all(|c| c.len() <= d)
}

/// Adjacency bitmasks for graphs with at most 64 vertices.
#[derive(Debug, Clone)]
pub(crate) struct MaskGraph {
    adj: Vec<u64>,
    full: u64,
}

impl MaskGraph {
    pub(crate) fn new(graph: &Graph) -> Self {
        let n = graph.n();
        assert!(n <= MASK_CEILING);
        let adj = (0..n).map(|v| graph.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w))).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        MaskGraph { adj, full }
    }

    /// Whether deleting `removed` leaves components of size at most `d`.
    pub(crate) fn is_dcoc(&self, d: usize, removed: u64) -> bool {
        let mut rest = self.full & !removed;
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                frontier = next & rest & !comp;
                comp |= frontier;
                if comp.count_ones() as usize > d {
                    return false;
                }
            }
            rest &= !comp;
        }
        true
    }

    /// Size of the component of `v` in the graph minus `removed` (0 if `v` is removed).
    pub(crate) fn component_size(&self, v: usize, removed: u64) -> usize {
        if removed >> v & 1 == 1 {
            return 0;
        }
        let rest = self.full & !removed;
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[w];
            }
            frontier = next & rest & !comp;
            comp |= frontier;
        }
        comp.count_ones() as usize
    }
}

/// Calls `visit` on every `size`-subset of `0..n` as a bitmask, in lexicographic order of
/// the sorted index lists, until it returns false.
pub(crate) fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(u64) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | (1 << i));
        if !visit(mask) {
            return;
        }
        // Advance the rightmost index that still has room.
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum `d`-coc set by exhaustive search over subsets of increasing size. The witness is
/// the lexicographically smallest minimum set.
pub fn opt_brute(graph: &Graph, d: usize) -> Result<Solution> {
    opt_brute_with_limit(graph, d, BRUTE_LIMIT)
}

/// [`opt_brute`] with a caller-chosen vertex limit (at most 64).
pub fn opt_brute_with_limit(graph: &Graph, d: usize, limit: usize) -> Result<Solution> {
    let n = graph.n();
    let limit = limit.min(MASK_CEILING);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let mg = MaskGraph::new(graph);
    for size in 0..=n {
        let mut found = None;
        for_each_subset(n, size, |m| {
            if mg.is_dcoc(d, m) {
                found = Some(m);
                false
            } else {
                true
            }
        });
        if let Some(m) = found {
            return Ok(Solution { vertices: mask_to_vec(m) });
        }
    }
    unreachable!("deleting every vertex is always a solution")
}

/// The optimum size together with every minimum `d`-coc set, as bitmasks.
pub fn minimum_dcoc_sets(graph: &Graph, d: usize, limit: usize) -> Result<(usize, Vec<u64>)> {
    let opt = opt_brute_with_limit(graph, d, limit)?.size();
    let mg = MaskGraph::new(graph);
    let mut sets = Vec::new();
    for_each_subset(graph.n(), opt, |m| {
        if mg.is_dcoc(d, m) {
            sets.push(m);
        }
        true
    });
    Ok((opt, sets))
}

/// Optimum of a caterpillar forest: the size of its solution-tight packing.
pub fn opt_caterpillar_forest(cs: &CaterpillarStructure, d: usize) -> usize {
    solution_tight_packing(cs, d).len()
}

/// Optimum of a cycle on `n` vertices.
pub fn opt_cycle(n: usize, d: usize) -> usize {
    if n <= d {
        0
    } else {
        n.div_ceil(d + 1)
    }
}

/// Polynomial optimum for graphs whose components are cycles or caterpillars.
pub fn opt_poly(graph: &Graph, d: usize) -> Result<usize> {
    let mut cycle_mask = vec![false; graph.n()];
    let mut total = 0;
    for comp in graph.components() {
        let is_cycle = comp.len() >= 3 && comp.iter().all(|&v| graph.degree(v) == 2);
        if is_cycle {
            total += opt_cycle(comp.len(), d);
            for &v in &comp {
                cycle_mask[v] = true;
            }
        }
    }
    let cs = recognize_masked(graph, &cycle_mask).map_err(|e| match e {
        Error::NotCaterpillar(v) => Error::ClassViolation(v),
        other => other,
    })?;
    Ok(total + opt_caterpillar_forest(&cs, d))
}

/// [`opt_poly`] on the subgraph induced by `vertices`.
pub fn opt_poly_induced(graph: &Graph, vertices: &[usize], d: usize) -> Result<usize> {
    opt_poly(&graph.induced(vertices).0, d)
}

/// Whether `x` is contained in no minimum `d`-coc set, decided as
/// `opt(G - X) + |X| > opt(G)` with the polynomial solver for cycles and caterpillars.
pub fn is_blocking_set(graph: &Graph, d: usize, x: &[usize]) -> Result<bool> {
    is_blocking_set_with(graph, d, x, opt_poly)
}

/// [`is_blocking_set`] with a caller-supplied optimum oracle.
pub fn is_blocking_set_with(
    graph: &Graph,
    d: usize,
    x: &[usize],
    opt: impl Fn(&Graph, usize) -> Result<usize>,
) -> Result<bool> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    let rest: Vec<usize> = (0..graph.n()).filter(|v| x.binary_search(v).is_err()).collect();
    let without = opt(&graph.induced(&rest).0, d)?;
    Ok(without + x.len() > opt(graph, d)?)
}

/// All inclusion-minimal blocking sets, ordered by size and then lexicographically.
pub fn enumerate_minimal_blocking_sets(graph: &Graph, d: usize) -> Result<Vec<Vec<usize>>> {
    let n = graph.n();
    if n > BLOCKING_LIMIT {
        return Err(Error::TooLarge { n, limit: BLOCKING_LIMIT });
    }
    let (_, sets) = minimum_dcoc_sets(graph, d, BLOCKING_LIMIT)?;
    // Subsets of some minimum set are exactly the non-blocking sets.
    let mut free = vec![false; 1 << n];
    for &s in &sets {
        free[s as usize] = true;
    }
    for m in (0..1usize << n).rev() {
        if free[m] {
            let mut bits = m;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                bits &= bits - 1;
                free[m & !b] = true;
            }
        }
    }
    let mut out = Vec::new();
    for size in 1..=n {
        for_each_subset(n, size, |m| {
            let m = m as usize;
            if !free[m] {
                let mut bits = m;
                let mut minimal = true;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    bits &= bits - 1;
                    if !free[m & !b] {
                        minimal = false;
                        break;
                    }
                }
                if minimal {
                    out.push(mask_to_vec(m as u64));
                }
            }
            true
        });
    }
    Ok(out)
}

/// Exact solver for instances whose modulator is a vertex cover: branch over all colorings
/// of `M` with colors `0..=|M|`. Color 0 means "selected"; an outside vertex is selected
/// when it sees two different nonzero colors. Returns a witness of size at most `k`.
pub fn solve_vc_branching(inst: &Instance) -> Result<Option<Solution>> {
    let g = &inst.graph;
    let in_m = inst.modulator_mask();
    if let Some((u, v)) = g.edges().find(|&(u, v)| !in_m[u] && !in_m[v]) {
        return Err(Error::ModulatorNotVc(u, v));
    }
    if inst.k < 0 {
        return Ok(None);
    }
    let k = inst.k as usize;
    let m = inst.modulator.len();
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !in_m[v]).collect();
    let mut color_of = vec![0usize; g.n()];
    let mut colors = vec![0usize; m];
    loop {
        let s1: Vec<usize> = (0..m).filter(|&i| colors[i] == 0).map(|i| inst.modulator[i]).collect();
        if s1.len() <= k {
            for (i, &v) in inst.modulator.iter().enumerate() {
                color_of[v] = colors[i];
            }
            let mut s2 = s1;
            for &w in &outside {
                let mut seen = 0usize;
                let mut split = false;
                for &u in g.neighbors(w) {
                    let c = color_of[u];
                    if c != 0 {
                        if seen == 0 {
                            seen = c;
                        } else if seen != c {
                            split = true;
                            break;
                        }
                    }
                }
                if split {
                    s2.push(w);
                    if s2.len() > k {
                        break;
                    }
                }
            }
            if s2.len() <= k && is_dcoc_set(g, inst.d, &s2) {
                s2.sort_unstable();
                return Ok(Some(Solution { vertices: s2 }));
            }
        }
        // Odometer step over (m+1)^m colorings.
        let mut i = 0;
        loop {
            if i == m {
                return Ok(None);
            }
            colors[i] += 1;
            if colors[i] <= m {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caterpillar::recognize_caterpillar_forest;

    #[test]
    fn dcoc_checks() {
        let p3 = Graph::path(3);
        assert!(!is_dcoc_set(&p3, 2, &[]));
        assert!(is_dcoc_set(&p3, 2, &[1]));
        assert!(is_dcoc_set(&Graph::complete(5), 1, &[0, 2, 3, 4]));
    }

    #[test]
    fn subsets_come_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |m| {
            seen.push(mask_to_vec(m));
            true
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_subset(5, 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn brute_force_golden_values() {
        let sol = opt_brute(&Graph::path(6), 2).unwrap();
        assert_eq!(sol.vertices, vec![0, 3]);
        assert_eq!(opt_brute(&Graph::complete(4), 1).unwrap().size(), 3);
        assert_eq!(opt_brute(&Graph::complete(4), 4).unwrap().size(), 0);
        assert_eq!(opt_brute(&Graph::new(25), 1), Err(Error::TooLarge { n: 25, limit: 24 }));
    }

    #[test]
    fn caterpillar_optimum_matches_brute_force() {
        for (g, d, want) in [(Graph::path(6), 2, 2), (Graph::star(5), 2, 1), (Graph::path(2), 2, 0)] {
            let cs = recognize_caterpillar_forest(&g, &[]).unwrap();
            assert_eq!(opt_caterpillar_forest(&cs, d), want);
            assert_eq!(opt_brute(&g, d).unwrap().size(), want);
        }
    }

    #[test]
    fn cycle_optimum() {
        for n in 3..10 {
            for d in 1..5 {
                assert_eq!(opt_poly(&Graph::cycle(n), d).unwrap(), opt_brute(&Graph::cycle(n), d).unwrap().size());
            }
        }
        let spider = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert_eq!(opt_poly(&spider, 1), Err(Error::ClassViolation(0)));
    }

    #[test]
    fn blocking_set_examples() {
        let p3 = Graph::path(3);
        assert!(!is_blocking_set(&p3, 2, &[]).unwrap());
        // An endpoint of P3 is itself a minimum 2-coc set; with d = 3 the optimum is empty.
        assert!(!is_blocking_set(&p3, 2, &[0]).unwrap());
        assert!(is_blocking_set(&p3, 3, &[0]).unwrap());
        assert!(!is_blocking_set(&p3, 1, &[1]).unwrap());
        let edgeless = enumerate_minimal_blocking_sets(&Graph::new(3), 1).unwrap();
        assert_eq!(edgeless, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn short_cycle_blocking_sets_are_all_triples() {
        for d in 1..=4 {
            let g = Graph::cycle(d + 2);
            let sets = enumerate_minimal_blocking_sets(&g, d).unwrap();
            let n = d + 2;
            assert_eq!(sets.len(), n * (n - 1) * (n - 2) / 6);
            assert!(sets.iter().all(|s| s.len() == 3));
        }
    }

    #[test]
    fn vc_branching_on_an_edge() {
        let yes = Instance::new(Graph::path(2), 1, 1, [0, 1]);
        let no = Instance::new(Graph::path(2), 1, 0, [0, 1]);
        assert_eq!(solve_vc_branching(&yes).unwrap().map(|s| s.size()), Some(1));
        assert_eq!(solve_vc_branching(&no).unwrap(), None);
        let bad = Instance::new(Graph::path(3), 1, 1, [0]);
        assert_eq!(solve_vc_branching(&bad), Err(Error::ModulatorNotVc(1, 2)));
    }
}
