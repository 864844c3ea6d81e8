//! Instance generators: the hardness reductions as constructive transformations, their
//! source problems with brute-force oracles, and seeded random instances.
//!
//! Text formats of the source problems, `#` starting a comment:
//!
//! ```text
//! umrss <k> <k'>          xsc <n> <t> <k>
//! t <t_1> ... <t_k>       f <e_1> ... <e_t>      (0-based elements, one line per set)
//! s <s_1> ... <s_k>       (one line per vector)
//! ```

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{AnnotatedInstance, Instance};
use crate::solve::{for_each_subset, opt_brute, MaskGraph, BRUTE_LIMIT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// Vertex Cover instance: is there a vertex cover of size at most `k`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcInstance {
    pub graph: Graph,
    pub k: i64,
}

/// Unary multidimensional relaxed subset sum: is there a selection of at most `k_prime`
/// vectors whose sum dominates `target` coordinatewise?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmrssInstance {
    /// Dimension.
    pub k: usize,
    pub vectors: Vec<Vec<usize>>,
    pub target: Vec<usize>,
    pub k_prime: usize,
}

impl UmrssInstance {
    /// Checks that every vector and the target have dimension `k`.
    pub fn new(k: usize, vectors: Vec<Vec<usize>>, target: Vec<usize>, k_prime: usize) -> Result<Self> {
        if target.len() != k || vectors.iter().any(|s| s.len() != k) {
            return Err(Error::InvalidArgument(format!("every vector must have dimension {k}")));
        }
        Ok(UmrssInstance { k, vectors, target, k_prime })
    }

    /// Total of all numbers, the unary encoding size.
    pub fn unary_size(&self) -> usize {
        self.vectors.iter().flatten().sum::<usize>() + self.target.iter().sum::<usize>() + self.k_prime
    }
}

/// Exact set cover: can `k` sets of the family partition the universe `0..n`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XscInstance {
    pub n: usize,
    /// Common set size.
    pub t: usize,
    /// Sorted, duplicate-free sets.
    pub family: Vec<Vec<usize>>,
    pub k: usize,
}

impl XscInstance {
    /// Normalizes the family and checks that every set has exactly `t` elements below `n`.
    pub fn new(n: usize, t: usize, family: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let mut sets = Vec::with_capacity(family.len());
        for mut f in family {
            f.sort_unstable();
            f.dedup();
            if f.len() != t || f.iter().any(|&e| e >= n) {
                return Err(Error::InvalidArgument(format!("sets must have {t} distinct elements below {n}")));
            }
            sets.push(f);
        }
        sets.sort();
        sets.dedup();
        Ok(XscInstance { n, t, family: sets, k })
    }
}

/// Edge subdivision: every edge `uv` becomes the path `u, u_e, v_e, v`, and `u_e`, `v_e` each
/// get a pendant path on `d - 1` vertices. `k' = k + |E|`. For `d = 1` the graph is returned
/// unchanged. The original vertices form the modulator; removing them leaves paths.
pub fn gen_vc_to_dcoc(vc: &VcInstance, d: usize) -> Instance {
    assert!(d >= 1, "d must be positive");
    let n = vc.graph.n();
    let modulator = 0..n;
    if d == 1 {
        return Instance::new(vc.graph.clone(), 1, vc.k, modulator);
    }
    let edges: Vec<(usize, usize)> = vc.graph.edges().collect();
    let mut g = Graph::new(n);
    for &(u, v) in &edges {
        let ue = g.add_vertex();
        let ve = g.add_vertex();
        g.add_edge(u, ue);
        g.add_edge(ue, ve);
        g.add_edge(ve, v);
        for anchor in [ue, ve] {
            let mut prev = anchor;
            for _ in 0..d - 1 {
                let p = g.add_vertex();
                g.add_edge(prev, p);
                prev = p;
            }
        }
    }
    Instance::new(g, d, vc.k + edges.len() as i64, modulator)
}

/// Largest vector entry, at least 1.
fn umrss_beta(u: &UmrssInstance) -> usize {
    u.vectors.iter().flatten().copied().max().unwrap_or(0).max(1)
}

/// The selection-gadget reduction. Vertex order: `u_i^j` row-major, then the `γ` vertices of
/// each vector, then each vector's `γ - 1` stars (center, then leaves), then the padding
/// pendants of the `u_i^j`. The modulator is `{u_i^j}`, of size `k·(k' + 1)`, and
/// `ℓ = (γ - 1)·|S| + k'`.
pub fn gen_umrss_to_coc(u: &UmrssInstance) -> Instance {
    let k = u.k;
    let copies = u.k_prime + 1;
    let beta = umrss_beta(u);
    let gamma = copies * k.max(1) * beta;
    let mut g = Graph::new(k * copies);
    let u_id = |i: usize, j: usize| i * copies + j;
    let mut vector_vertices = Vec::with_capacity(u.vectors.len());
    for s in &u.vectors {
        let ids: Vec<usize> = (0..gamma).map(|_| g.add_vertex()).collect();
        let mut next = 0;
        for (i, &entry) in s.iter().enumerate() {
            for j in 0..copies {
                for _ in 0..entry {
                    g.add_edge(u_id(i, j), ids[next]);
                    next += 1;
                }
            }
        }
        vector_vertices.push(ids);
    }
    let d = g.max_degree() + 1;
    for ids in &vector_vertices {
        for w in ids.windows(2) {
            let center = g.add_vertex();
            g.add_edge(w[0], center);
            g.add_edge(center, w[1]);
            for _ in 0..d - 1 {
                let leaf = g.add_vertex();
                g.add_edge(center, leaf);
            }
        }
    }
    for i in 0..k {
        for j in 0..copies {
            let v = u_id(i, j);
            while g.degree(v) < d + u.target[i] - 1 {
                let p = g.add_vertex();
                g.add_edge(v, p);
            }
        }
    }
    let ell = ((gamma - 1) * u.vectors.len() + u.k_prime) as i64;
    Instance::new(g, d, ell, 0..k * copies)
}

/// The column construction. For a malformed input (`k·t != n`, empty family, or `d < 1`)
/// returns the canonical no-instance. Vertex order: `u_i^j` at `j·n + i`, then `v_F^j` for
/// each column `j` and set `F` in family order. `d = |F| + t - 1`, `k' = n·(k - 1)`.
pub fn gen_xsc_to_acoc(x: &XscInstance) -> AnnotatedInstance {
    let (n, t, k) = (x.n, x.t, x.k);
    let f = x.family.len();
    if t == 0 || k * t != n || f == 0 || f + t < 2 {
        return AnnotatedInstance::new(Instance::trivial_no(), []);
    }
    let u_id = |i: usize, j: usize| j * n + i;
    let mut g = Graph::new(n * k);
    for j in 0..k {
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(u_id(a, j), u_id(b, j));
            }
        }
    }
    for j in 0..k {
        for set in &x.family {
            let v = g.add_vertex();
            for i in (0..n).filter(|i| set.binary_search(i).is_err()) {
                g.add_edge(v, u_id(i, j));
            }
        }
    }
    let mut annotations = Vec::new();
    for i in 0..n {
        for a in 0..k {
            for b in a + 1..k {
                annotations.push((u_id(i, a), u_id(i, b)));
            }
        }
    }
    let d = f + t - 1;
    let inst = Instance::new(g, d, (n * (k - 1)) as i64, 0..n * k);
    AnnotatedInstance::new(inst, annotations)
}

/// Annotation gadgets: every annotation `{u, v}` gets adjacent vertices `a_u ~ u` and
/// `a_v ~ v` joined by an edge, each with `d - 1` pendants; both join the modulator.
/// `k' = k + |A|`.
pub fn gen_acoc_to_coc(a: &AnnotatedInstance) -> Instance {
    let inst = &a.instance;
    let d = inst.d;
    let mut g = inst.graph.clone();
    let mut modulator = inst.modulator.clone();
    for &(u, v) in &a.annotations {
        let au = g.add_vertex();
        let av = g.add_vertex();
        g.add_edge(u, au);
        g.add_edge(v, av);
        g.add_edge(au, av);
        for center in [au, av] {
            for _ in 0..d - 1 {
                let p = g.add_vertex();
                g.add_edge(center, p);
            }
        }
        modulator.extend([au, av]);
    }
    Instance::new(g, d, inst.k + a.annotations.len() as i64, modulator)
}

/// Whether the graph has a vertex cover of size at most `k`, by brute force.
pub fn vc_brute(vc: &VcInstance) -> Result<bool> {
    Ok(opt_brute(&vc.graph, 1)?.size() as i64 <= vc.k)
}

/// Whether some selection of at most `k'` vectors dominates the target.
pub fn umrss_brute(u: &UmrssInstance) -> bool {
    let n = u.vectors.len();
    assert!(n < 64, "too many vectors for enumeration");
    (0u64..1 << n).any(|mask| {
        mask.count_ones() as usize <= u.k_prime
            && (0..u.k).all(|i| {
                let sum: usize = (0..n).filter(|&s| mask >> s & 1 == 1).map(|s| u.vectors[s][i]).sum();
                sum >= u.target[i]
            })
    })
}

/// Whether `k` sets of the family partition the universe.
pub fn xsc_brute(x: &XscInstance) -> bool {
    fn rec(x: &XscInstance, start: usize, left: usize, covered: &mut [bool]) -> bool {
        if left == 0 {
            return covered.iter().all(|&c| c);
        }
        for fi in start..x.family.len() {
            let f = &x.family[fi];
            if f.iter().all(|&e| !covered[e]) {
                f.iter().for_each(|&e| covered[e] = true);
                let ok = rec(x, fi + 1, left - 1, covered);
                f.iter().for_each(|&e| covered[e] = false);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(x, 0, x.k, &mut vec![false; x.n])
}

/// Minimum size of a `d`-coc set that hits every annotation, by exhaustive search.
pub fn opt_annotated_brute(a: &AnnotatedInstance) -> Result<usize> {
    let g = &a.instance.graph;
    let n = g.n();
    if n > BRUTE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_LIMIT });
    }
    let mg = MaskGraph::new(g);
    let hits = |m: u64| a.annotations.iter().all(|&(u, v)| (m >> u | m >> v) & 1 == 1);
    for size in 0..=n {
        let mut found = false;
        for_each_subset(n, size, |m| {
            found = hits(m) && mg.is_dcoc(a.instance.d, m);
            !found
        });
        if found {
            return Ok(size);
        }
    }
    unreachable!("deleting every vertex hits every annotation")
}

/// Whether the annotated instance is a yes-instance.
pub fn acoc_brute(a: &AnnotatedInstance) -> Result<bool> {
    Ok(opt_annotated_brute(a)? as i64 <= a.instance.k)
}

/// How [`gen_random`] picks the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPolicy {
    Fixed(i64),
    /// Uniform in `lo..=hi`.
    Uniform(i64, i64),
}

/// Shape of a random instance whose modulator leaves caterpillars (and optionally cycles).
#[derive(Debug, Clone, PartialEq)]
pub struct RandomProfile {
    pub d: usize,
    pub modulator_size: usize,
    pub caterpillars: usize,
    /// Inclusive spine length range.
    pub spine_len: (usize, usize),
    /// Each spine vertex gets pendants while a coin with this bias comes up heads.
    pub pendant_prob: f64,
    pub max_pendants: usize,
    pub cycles: usize,
    /// Inclusive cycle length range, lower end at least 3.
    pub cycle_len: (usize, usize),
    /// Probability of each modulator-to-other edge, including modulator pairs.
    pub modulator_edge_prob: f64,
    pub k: KPolicy,
}

impl Default for RandomProfile {
    fn default() -> Self {
        RandomProfile {
            d: 2,
            modulator_size: 2,
            caterpillars: 3,
            spine_len: (1, 4),
            pendant_prob: 0.3,
            max_pendants: 2,
            cycles: 0,
            cycle_len: (3, 6),
            modulator_edge_prob: 0.2,
            k: KPolicy::Uniform(0, 6),
        }
    }
}

/// Random instance for a profile; identical for identical profile and seed. Vertex ids are
/// shuffled, so the modulator is not a prefix.
pub fn gen_random(profile: &RandomProfile, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = profile.modulator_size;
    let mut edges = Vec::new();
    let mut n = m;
    for _ in 0..profile.caterpillars {
        let len = rng.random_range(profile.spine_len.0..=profile.spine_len.1.max(profile.spine_len.0));
        let first = n;
        n += len;
        for v in first + 1..n {
            edges.push((v - 1, v));
        }
        for v in first..first + len {
            let mut count = 0;
            while count < profile.max_pendants && rng.random_bool(profile.pendant_prob) {
                edges.push((v, n));
                n += 1;
                count += 1;
            }
        }
    }
    for _ in 0..profile.cycles {
        let lo = profile.cycle_len.0.max(3);
        let len = rng.random_range(lo..=profile.cycle_len.1.max(lo));
        for i in 0..len {
            edges.push((n + i, n + (i + 1) % len));
        }
        n += len;
    }
    for u in 0..m {
        for v in u + 1..n {
            if rng.random_bool(profile.modulator_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut g = Graph::new(n);
    for (u, v) in edges {
        g.add_edge(perm[u], perm[v]);
    }
    let k = match profile.k {
        KPolicy::Fixed(k) => k,
        KPolicy::Uniform(lo, hi) => rng.random_range(lo..=hi.max(lo)),
    };
    Instance::new(g, profile.d, k, (0..m).map(|v| perm[v]))
}

/// Random instance whose modulator is a vertex cover: `others` independent vertices, each
/// joined to each of the `modulator_size` modulator vertices with probability `p`, plus
/// modulator-internal edges with the same probability.
pub fn gen_random_vc_modulator(modulator_size: usize, others: usize, p: f64, d: usize, k: i64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = modulator_size + others;
    let mut g = Graph::new(n);
    for u in 0..modulator_size {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Instance::new(g, d, k, 0..modulator_size)
}

fn numbers(line: usize, parts: &[&str]) -> Result<Vec<usize>> {
    parts
        .iter()
        .map(|s| s.parse().map_err(|_| Error::Syntax { line, msg: format!("expected a number, got `{s}`") }))
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let parts: Vec<&str> = body.split_whitespace().collect();
        (!parts.is_empty()).then_some((i + 1, parts))
    })
}

/// Parses the UMRSS text format.
pub fn parse_umrss(text: &str) -> Result<UmrssInstance> {
    let mut header = None;
    let mut target = None;
    let mut vectors = Vec::new();
    for (line, parts) in content_lines(text) {
        match parts[0] {
            "umrss" if parts.len() == 3 && header.is_none() => {
                let v = numbers(line, &parts[1..])?;
                header = Some((v[0], v[1]));
            }
            "t" if header.is_some() && target.is_none() => target = Some(numbers(line, &parts[1..])?),
            "s" if header.is_some() => vectors.push(numbers(line, &parts[1..])?),
            _ => return Err(Error::Syntax { line, msg: format!("unexpected `{}` line", parts[0]) }),
        }
    }
    let (k, k_prime) = header.ok_or(Error::MissingHeader)?;
    let target = target.ok_or(Error::InvalidArgument("missing target line".into()))?;
    UmrssInstance::new(k, vectors, target, k_prime)
}

/// Writes the UMRSS text format.
pub fn write_umrss(u: &UmrssInstance) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut s = format!("umrss {} {}\nt {}\n", u.k, u.k_prime, join(&u.target));
    for v in &u.vectors {
        writeln!(s, "s {}", join(v)).unwrap();
    }
    s
}

/// Parses the exact set cover text format.
pub fn parse_xsc(text: &str) -> Result<XscInstance> {
    let mut header = None;
    let mut family = Vec::new();
    for (line, parts) in content_lines(text) {
        match parts[0] {
            "xsc" if parts.len() == 4 && header.is_none() => {
                let v = numbers(line, &parts[1..])?;
                header = Some((v[0], v[1], v[2]));
            }
            "f" if header.is_some() => family.push(numbers(line, &parts[1..])?),
            _ => return Err(Error::Syntax { line, msg: format!("unexpected `{}` line", parts[0]) }),
        }
    }
    let (n, t, k) = header.ok_or(Error::MissingHeader)?;
    XscInstance::new(n, t, family, k)
}

/// Writes the exact set cover text format.
pub fn write_xsc(x: &XscInstance) -> String {
    let mut s = format!("xsc {} {} {}\n", x.n, x.t, x.k);
    for f in &x.family {
        let parts: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(s, "f {}", parts.join(" ")).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caterpillar::recognize_caterpillar_forest;
    use crate::solve::opt_brute;

    fn coc_yes(inst: &Instance) -> bool {
        opt_brute(&inst.graph, inst.d).unwrap().size() as i64 <= inst.k
    }

    #[test]
    fn vc_triangle() {
        let vc = VcInstance { graph: Graph::complete(3), k: 2 };
        let out = gen_vc_to_dcoc(&vc, 2);
        assert_eq!(out.graph.n(), 15);
        assert_eq!(out.k, 5);
        assert!(out.graph.max_degree() <= 3);
        assert_eq!(coc_yes(&out), vc_brute(&vc).unwrap());
        assert!(recognize_caterpillar_forest(&out.graph, &out.modulator).is_ok());
    }

    #[test]
    fn vc_single_edge() {
        let vc = VcInstance { graph: Graph::path(2), k: 1 };
        assert!(coc_yes(&gen_vc_to_dcoc(&vc, 2)));
        assert_eq!(gen_vc_to_dcoc(&vc, 1).graph, vc.graph);
    }

    #[test]
    fn umrss_smallest_case() {
        let u = UmrssInstance::new(1, vec![vec![1]], vec![1], 1).unwrap();
        let out = gen_umrss_to_coc(&u);
        assert_eq!(out.d, 2);
        assert_eq!(out.k, 2);
        assert_eq!(out.modulator.len(), 2);
        assert!(recognize_caterpillar_forest(&out.graph, &out.modulator).is_ok());
        assert_eq!(coc_yes(&out), umrss_brute(&u));
        let zero = UmrssInstance::new(1, vec![vec![1]], vec![0], 0).unwrap();
        assert!(umrss_brute(&zero) && coc_yes(&gen_umrss_to_coc(&zero)));
    }

    #[test]
    fn xsc_smallest_case() {
        let x = XscInstance::new(2, 2, vec![vec![0, 1]], 1).unwrap();
        let out = gen_xsc_to_acoc(&x);
        assert_eq!(out.instance.d, 2);
        assert_eq!(out.instance.k, 0);
        assert_eq!(acoc_brute(&out).unwrap(), xsc_brute(&x));
        let bad = XscInstance::new(3, 2, vec![vec![0, 1]], 1).unwrap();
        assert!(!acoc_brute(&gen_xsc_to_acoc(&bad)).unwrap());
    }

    #[test]
    fn xsc_columns_are_cliques() {
        let x = XscInstance::new(4, 2, vec![vec![0, 1], vec![2, 3], vec![1, 2]], 2).unwrap();
        let out = gen_xsc_to_acoc(&x);
        let g = &out.instance.graph;
        for j in 0..2 {
            for a in 0..4 {
                for b in a + 1..4 {
                    assert!(g.has_edge(j * 4 + a, j * 4 + b));
                }
            }
        }
        assert_eq!(out.instance.d, 4);
        assert_eq!(acoc_brute(&out).unwrap(), xsc_brute(&x));
    }

    #[test]
    fn annotation_gadgets() {
        let base = Instance::new(Graph::path(2), 2, 1, [0, 1]);
        let plain = AnnotatedInstance::new(base.clone(), []);
        assert_eq!(gen_acoc_to_coc(&plain), base);
        let annotated = AnnotatedInstance::new(base, [(0, 1)]);
        let out = gen_acoc_to_coc(&annotated);
        assert_eq!(out.k, 2);
        assert!(out.modulator.len() <= 2 + 2);
        assert_eq!(coc_yes(&out), acoc_brute(&annotated).unwrap());
    }

    #[test]
    fn random_instances_are_reproducible() {
        let p = RandomProfile::default();
        assert_eq!(gen_random(&p, 7), gen_random(&p, 7));
        let inst = gen_random(&p, 7);
        assert!(recognize_caterpillar_forest(&inst.graph, &inst.modulator).is_ok());
    }

    #[test]
    fn text_formats_round_trip() {
        let u = UmrssInstance::new(2, vec![vec![1, 0], vec![2, 3]], vec![1, 1], 1).unwrap();
        assert_eq!(parse_umrss(&write_umrss(&u)).unwrap(), u);
        let x = XscInstance::new(4, 2, vec![vec![0, 1], vec![2, 3]], 2).unwrap();
        assert_eq!(parse_xsc(&write_xsc(&x)).unwrap(), x);
        assert!(parse_xsc("f 0 1\n").is_err());
    }
}
