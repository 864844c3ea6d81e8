//! The two reduction rules: component elimination through q-expansions of the conflict
//! graph (Rule 1) and essence-based replacement of long spine stretches (Rule 2).
//!
//! Both rules return a fresh instance with dense vertex ids and a report holding the map
//! from old to new ids and a plain-text provenance log.

use crate::caterpillar::{recognize_caterpillar_forest, Caterpillar, CaterpillarStructure};
use crate::error::{Error, Result};
use crate::essence::{essence, synthesize};
use crate::expansion::q_expansion;
use crate::graph::{mask_of, Graph};
use crate::instance::Instance;
use crate::monoid::MonoidFn;
use crate::packing::{merged_packing, pack_caterpillar, solution_tight_packing, Interval, Packing};
use crate::solve::opt_poly_induced;

/// All nonempty subsets of `modulator` with at most `b` elements, by size and then
/// lexicographically.
pub fn chunks(modulator: &[usize], b: usize) -> Vec<Vec<usize>> {
    fn rec(m: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..m.len() {
            cur.push(m[i]);
            rec(m, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=b.min(modulator.len()) {
        rec(modulator, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// `|N_H(X)| + opt(H - N_H(X)) - opt(H)` for the subgraph `H` induced by `h`, which must
/// consist of caterpillars and cycles.
pub fn conflict(graph: &Graph, d: usize, chunk: &[usize], h: &[usize]) -> Result<usize> {
    let nbrs: Vec<usize> = h.iter().copied().filter(|&v| chunk.iter().any(|&x| graph.has_edge(x, v))).collect();
    if nbrs.is_empty() {
        return Ok(0);
    }
    let rest: Vec<usize> = h.iter().copied().filter(|v| !nbrs.contains(v)).collect();
    let with = opt_poly_induced(graph, h, d)?;
    let without = opt_poly_induced(graph, &rest, d)?;
    Ok(nbrs.len() + without - with)
}

/// Bipartite graph between chunks and the components of `G - M`, with an edge wherever the
/// conflict is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    pub chunks: Vec<Vec<usize>>,
    /// Vertex sets of the components of `G - M`, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// `adj[i]` lists the components in conflict with chunk `i`, ascending.
    pub adj: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn build(inst: &Instance, b: usize) -> Result<Self> {
        let chunks = chunks(&inst.modulator, b);
        let components = inst.graph.components_avoiding(&inst.modulator_mask());
        let mut adj = Vec::with_capacity(chunks.len());
        for x in &chunks {
            let mut row = Vec::new();
            for (ci, c) in components.iter().enumerate() {
                if conflict(&inst.graph, inst.d, x, c)? > 0 {
                    row.push(ci);
                }
            }
            adj.push(row);
        }
        Ok(ConflictGraph { chunks, components, adj })
    }
}

/// Outcome of Rule 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule1Report {
    /// Expansion factor `(d - 1)·b + 1`.
    pub q: usize,
    /// Deleted components, in input ids.
    pub deleted: Vec<Vec<usize>>,
    pub components_before: usize,
    pub components_after: usize,
    pub k_before: i64,
    pub k_after: i64,
    /// New id of each input vertex, `None` if deleted.
    pub vertex_map: Vec<Option<usize>>,
    pub log: Vec<String>,
}

/// Rule 1: repeatedly deletes the components isolated in the conflict graph (paying their
/// optimum from `k`) and removes q-expansions from a working copy of the conflict graph,
/// until fewer than `q` components per remaining chunk are left. Afterwards `G - M` has
/// fewer than `q·|chunks|` components.
pub fn rule1_reduce_components(inst: &Instance, b: usize) -> Result<(Instance, Rule1Report)> {
    let d = inst.d;
    let q = (d - 1) * b + 1;
    let cg = ConflictGraph::build(inst, b)?;
    let mut log = vec![format!("rule1: q={q} chunks={} components={}", cg.chunks.len(), cg.components.len())];
    let mut alive_a = vec![true; cg.chunks.len()];
    let mut alive_b = vec![true; cg.components.len()];
    let mut deleted = vec![false; cg.components.len()];
    let mut k = inst.k;
    loop {
        let mut degree = vec![0usize; cg.components.len()];
        for (row, _) in cg.adj.iter().zip(&alive_a).filter(|&(_, &alive)| alive) {
            for &c in row {
                degree[c] += 1;
            }
        }
        for c in 0..cg.components.len() {
            if alive_b[c] && degree[c] == 0 {
                let opt = opt_poly_induced(&inst.graph, &cg.components[c], d)?;
                k -= opt as i64;
                alive_b[c] = false;
                deleted[c] = true;
                log.push(format!("rule1: delete component {:?} opt={opt} k={k}", cg.components[c]));
            }
        }
        let left: Vec<usize> = (0..cg.chunks.len()).filter(|&a| alive_a[a]).collect();
        let right: Vec<usize> = (0..cg.components.len()).filter(|&c| alive_b[c]).collect();
        if right.is_empty() || right.len() < q * left.len() {
            break;
        }
        let sub_adj: Vec<Vec<usize>> =
            left.iter().map(|&a| cg.adj[a].iter().filter_map(|c| right.binary_search(c).ok()).collect()).collect();
        let e = q_expansion(&sub_adj, right.len(), q)?;
        for &x in &e.x {
            alive_a[left[x]] = false;
        }
        for &y in &e.y {
            alive_b[right[y]] = false;
        }
        log.push(format!(
            "rule1: expansion chunks {:?} components {:?}",
            e.x.iter().map(|&x| &cg.chunks[left[x]]).collect::<Vec<_>>(),
            e.y.iter().map(|&y| cg.components[right[y]][0]).collect::<Vec<_>>()
        ));
    }
    let n = inst.graph.n();
    let mut removed = vec![false; n];
    for (c, comp) in cg.components.iter().enumerate() {
        if deleted[c] {
            for &v in comp {
                removed[v] = true;
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let (graph, new_to_old) = inst.graph.induced(&keep);
    let mut vertex_map = vec![None; n];
    for (new, &old) in new_to_old.iter().enumerate() {
        vertex_map[old] = Some(new);
    }
    let modulator = inst.modulator.iter().map(|&v| vertex_map[v].expect("modulator vertices are kept"));
    let out = Instance::new(graph, d, k, modulator);
    let components_after = deleted.iter().filter(|&&x| !x).count();
    log.push(format!("rule1: components_after={components_after} k={k}"));
    let report = Rule1Report {
        q,
        deleted: cg.components.iter().zip(&deleted).filter(|(_, &x)| x).map(|(c, _)| c.clone()).collect(),
        components_before: cg.components.len(),
        components_after,
        k_before: inst.k,
        k_after: k,
        vertex_map,
        log,
    };
    Ok((out, report))
}

/// Merge factor `c_p = (d³ + 1)·(2d·m + 1)` of Rule 2.
pub fn rule2_merge_factor(d: usize, m: usize) -> usize {
    (d.pow(3) + 1) * (2 * d * m + 1)
}

/// Rule 2 applies when the `c_p`-merged packing has more than `m²·(m + 2(d - 1))` graphs.
pub fn rule2_threshold(d: usize, m: usize) -> usize {
    m * m * (m + 2 * (d - 1))
}

/// Marks, for every chunk of size at most 2, its first `m + 2(d - 1)` conflicting graphs of
/// the merged packing and returns the first unmarked graph as `(component, index)`.
pub fn mark_and_pick(inst: &Instance, cs: &CaterpillarStructure, merged: &Packing) -> Result<(usize, usize)> {
    let d = inst.d;
    let m = inst.modulator.len();
    if merged.len() <= rule2_threshold(d, m) {
        return Err(Error::NotApplicable);
    }
    let limit = m + 2 * (d - 1);
    let ids: Vec<(usize, usize)> = merged.graph_ids().collect();
    let vertex_sets: Vec<Vec<usize>> = ids.iter().map(|&(c, i)| merged.vertices(cs, c, i)).collect();
    let mut marked = vec![false; ids.len()];
    for x in chunks(&inst.modulator, 2) {
        let mut count = 0;
        for (g, verts) in vertex_sets.iter().enumerate() {
            if count == limit {
                break;
            }
            if conflict(&inst.graph, d, &x, verts)? > 0 {
                marked[g] = true;
                count += 1;
            }
        }
    }
    let pick = marked.iter().position(|&mk| !mk).expect("more merged graphs than marks");
    Ok(ids[pick])
}

/// Spine interval of constituent `j` of merged graph `host` of `component`: the
/// solution-tight graphs `host·c_p + j·(d³+1) ..` of that component, `d³ + 1` of them.
fn constituent(tight: &Packing, component: usize, host: usize, j: usize, d: usize, c_p: usize) -> Interval {
    let unit = d.pow(3) + 1;
    let graphs = &tight.components[component].graphs;
    let start = host * c_p + j * unit;
    Interval { first: graphs[start].first, last: graphs[start + unit - 1].last }
}

/// Index of the first of the `2d·m + 1` constituents of the host merged graph such that
/// every modulator neighbor of it has at least `d` neighbors in earlier constituents and at
/// least `d` in later ones. Such a constituent always exists.
pub fn find_replaceable_subgraph(
    inst: &Instance,
    cs: &CaterpillarStructure,
    tight: &Packing,
    host: (usize, usize),
) -> usize {
    let d = inst.d;
    let m = inst.modulator.len();
    let c_p = rule2_merge_factor(d, m);
    let parts = 2 * d * m + 1;
    let (comp, idx) = host;
    let sets: Vec<Vec<usize>> = (0..parts)
        .map(|j| {
            let iv = constituent(tight, comp, idx, j, d, c_p);
            cs.components[comp].interval_vertices(iv.first, iv.last)
        })
        .collect();
    let count = |v: usize, range: std::ops::Range<usize>| -> usize {
        sets[range].iter().flatten().filter(|&&w| inst.graph.has_edge(v, w)).count()
    };
    (0..parts)
        .find(|&j| {
            inst.modulator
                .iter()
                .filter(|&&v| sets[j].iter().any(|&w| inst.graph.has_edge(v, w)))
                .all(|&v| count(v, 0..j) >= d && count(v, j + 1..parts) >= d)
        })
        .expect("each modulator vertex blocks at most 2d constituents")
}

/// Cuts the spine positions `first..=last` of component `component` (with their pendants)
/// out of `graph` and splices `replacement` in their place, joining it to the neighboring
/// spine vertices where they exist. Returns the new graph, the new id of every old vertex,
/// and the new ids of the replacement's vertices in [`Caterpillar::graph`] order.
pub fn replace_subcaterpillar(
    graph: &Graph,
    cs: &CaterpillarStructure,
    component: usize,
    iv: Interval,
    replacement: &Caterpillar,
) -> (Graph, Vec<Option<usize>>, Vec<usize>) {
    let comp = &cs.components[component];
    let cut = comp.interval_vertices(iv.first, iv.last);
    let removed = mask_of(graph.n(), &cut);
    let keep: Vec<usize> = (0..graph.n()).filter(|&v| !removed[v]).collect();
    let (mut g, new_to_old) = graph.induced(&keep);
    let mut vertex_map = vec![None; graph.n()];
    for (new, &old) in new_to_old.iter().enumerate() {
        vertex_map[old] = Some(new);
    }
    let offset = g.n();
    let piece = replacement.graph();
    let piece_ids: Vec<usize> = (0..piece.n()).map(|_| g.add_vertex()).collect();
    for (u, v) in piece.edges() {
        g.add_edge(offset + u, offset + v);
    }
    let left_end = offset;
    let right_end = offset + replacement.spine_len() - 1;
    if iv.first > 0 {
        g.add_edge(vertex_map[comp.spine[iv.first - 1]].unwrap(), left_end);
    }
    if iv.last + 1 < comp.spine.len() {
        g.add_edge(right_end, vertex_map[comp.spine[iv.last + 1]].unwrap());
    }
    (g, vertex_map, piece_ids)
}

/// Outcome of one application of Rule 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule2Report {
    pub c_p: usize,
    pub threshold: usize,
    /// Size of the `c_p`-merged packing.
    pub merged_graphs: usize,
    /// `(component, index)` of the host merged graph.
    pub host: (usize, usize),
    /// Index of the replaced constituent inside the host.
    pub constituent: usize,
    /// Replaced vertices, in input ids.
    pub replaced: Vec<usize>,
    pub essence: MonoidFn,
    pub opt_replaced: usize,
    pub opt_replacement: usize,
    pub k_before: i64,
    pub k_after: i64,
    /// New id of each input vertex, `None` if replaced.
    pub vertex_map: Vec<Option<usize>>,
    pub log: Vec<String>,
}

/// Rule 2: replaces a stretch of `d³ + 1` solution-tight graphs, chosen away from
/// modulator-heavy parts, by a caterpillar of the same essence with at most `d³` of them.
/// `k` changes by `opt(replacement) - opt(replaced)` and the solution-tight packing of
/// `G - M` shrinks.
pub fn rule2_replace_spine(inst: &Instance) -> Result<(Instance, Rule2Report)> {
    let d = inst.d;
    let m = inst.modulator.len();
    let cs = recognize_caterpillar_forest(&inst.graph, &inst.modulator)?;
    let tight = solution_tight_packing(&cs, d);
    let c_p = rule2_merge_factor(d, m);
    let merged = merged_packing(&tight, c_p)?;
    let host = mark_and_pick(inst, &cs, &merged)?;
    let j = find_replaceable_subgraph(inst, &cs, &tight, host);
    let iv = constituent(&tight, host.0, host.1, j, d, c_p);
    let piece = cs.components[host.0].caterpillar(iv.first, iv.last);
    let gamma = essence(&piece, d)?;
    let replacement = synthesize(&gamma);
    let opt_replaced = d.pow(3) + 1;
    let opt_replacement = pack_caterpillar(&replacement, d).0.len();
    assert!(opt_replacement < opt_replaced, "the replacement must pack strictly smaller");
    let (graph, vertex_map, _) = replace_subcaterpillar(&inst.graph, &cs, host.0, iv, &replacement);
    let k = inst.k - opt_replaced as i64 + opt_replacement as i64;
    let modulator = inst.modulator.iter().map(|&v| vertex_map[v].expect("modulator vertices are kept"));
    let out = Instance::new(graph, d, k, modulator);
    let replaced = cs.components[host.0].interval_vertices(iv.first, iv.last);
    let log = vec![format!(
        "rule2: host {:?} constituent {j} spine {}..={} essence {gamma} opt {opt_replaced}->{opt_replacement} k={k}",
        host, iv.first, iv.last
    )];
    let report = Rule2Report {
        c_p,
        threshold: rule2_threshold(d, m),
        merged_graphs: merged.len(),
        host,
        constituent: j,
        replaced,
        essence: gamma,
        opt_replaced,
        opt_replacement,
        k_before: inst.k,
        k_after: k,
        vertex_map,
        log,
    };
    Ok((out, report))
}
