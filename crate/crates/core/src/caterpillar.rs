//! Caterpillar forests: recognition with a fixed spine order, and a compact
//! single-caterpillar value type used by essences and synthesis.

use crate::error::{Error, Result};
use crate::graph::{mask_of, Graph};

/// One caterpillar component: its ordered spine and the pendants of each spine vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineComponent {
    /// Spine vertices `v_1, ..., v_t` from left to right.
    pub spine: Vec<usize>,
    /// `pendants[i]` lists the pendants of `spine[i]`, ascending.
    pub pendants: Vec<Vec<usize>>,
}

impl SpineComponent {
    pub fn vertex_count(&self) -> usize {
        self.spine.len() + self.pendants.iter().map(Vec::len).sum::<usize>()
    }

    /// Pendant count per spine position.
    pub fn profile(&self) -> Vec<usize> {
        self.pendants.iter().map(Vec::len).collect()
    }

    /// Spine positions `first..=last` together with their pendants, ascending.
    pub fn interval_vertices(&self, first: usize, last: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (first..=last)
            .flat_map(|i| std::iter::once(self.spine[i]).chain(self.pendants[i].iter().copied()))
            .collect();
        out.sort_unstable();
        out
    }

    /// All vertices of the component, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        self.interval_vertices(0, self.spine.len() - 1)
    }

    /// The compact caterpillar value of the spine interval `first..=last`.
    pub fn caterpillar(&self, first: usize, last: usize) -> Caterpillar {
        Caterpillar::new(self.pendants[first..=last].iter().map(Vec::len).collect())
    }
}

/// Position of a vertex inside a recognized structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Spine { component: usize, position: usize },
    Pendant { component: usize, parent: usize },
}

impl Role {
    pub fn component(self) -> usize {
        match self {
            Role::Spine { component, .. } | Role::Pendant { component, .. } => component,
        }
    }
}

/// Spines and pendant maps of every component of `G - M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaterpillarStructure {
    /// Components ordered by their smallest vertex id.
    pub components: Vec<SpineComponent>,
    /// Role of every vertex; `None` for removed (modulator) vertices.
    pub role: Vec<Option<Role>>,
}

impl CaterpillarStructure {
    /// Total number of spine vertices.
    pub fn spine_size(&self) -> usize {
        self.components.iter().map(|c| c.spine.len()).sum()
    }

    fn from_components(n: usize, components: Vec<SpineComponent>) -> Self {
        let mut role = vec![None; n];
        for (ci, c) in components.iter().enumerate() {
            for (pos, &v) in c.spine.iter().enumerate() {
                role[v] = Some(Role::Spine { component: ci, position: pos });
                for &p in &c.pendants[pos] {
                    role[p] = Some(Role::Pendant { component: ci, parent: pos });
                }
            }
        }
        CaterpillarStructure { components, role }
    }
}

/// Recognizes `graph - modulator` as a caterpillar forest.
pub fn recognize_caterpillar_forest(graph: &Graph, modulator: &[usize]) -> Result<CaterpillarStructure> {
    recognize_masked(graph, &mask_of(graph.n(), modulator))
}

/// Recognizes `graph` minus the flagged vertices as a caterpillar forest.
///
/// The spine of each component is a longest path: the path left after deleting all leaves,
/// extended at each end by its smallest-id leaf. The left end is the endpoint with the
/// smaller id. Components on one or two vertices are all spine.
pub fn recognize_masked(graph: &Graph, removed: &[bool]) -> Result<CaterpillarStructure> {
    let mut components = Vec::new();
    for comp in graph.components_avoiding(removed) {
        components.push(recognize_component(graph, removed, &comp)?);
    }
    Ok(CaterpillarStructure::from_components(graph.n(), components))
}

fn recognize_component(graph: &Graph, removed: &[bool], comp: &[usize]) -> Result<SpineComponent> {
    let root = comp[0];
    let inner = |v: usize| graph.neighbors(v).iter().copied().filter(move |&w| !removed[w]);
    let deg = |v: usize| inner(v).count();
    let edges: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    if edges + 1 != comp.len() {
        return Err(Error::NotCaterpillar(root));
    }
    if comp.len() <= 2 {
        return Ok(SpineComponent { spine: comp.to_vec(), pendants: vec![Vec::new(); comp.len()] });
    }
    let in_core = |v: usize| deg(v) >= 2;
    let core: Vec<usize> = comp.iter().copied().filter(|&v| in_core(v)).collect();
    let core_deg = |v: usize| inner(v).filter(|&w| in_core(w)).count();
    if core.iter().any(|&v| core_deg(v) > 2) {
        return Err(Error::NotCaterpillar(root));
    }
    // Walk the core path from its smallest endpoint.
    let start = core.iter().copied().find(|&v| core_deg(v) <= 1).expect("a finite path has an endpoint");
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = inner(cur).find(|&w| in_core(w) && w != prev) {
        prev = cur;
        cur = next;
        path.push(cur);
    }
    debug_assert_eq!(path.len(), core.len());
    let leaves = |v: usize| -> Vec<usize> { inner(v).filter(|&w| !in_core(w)).collect() };
    let first = path[0];
    let last = *path.last().unwrap();
    let left_leaf = leaves(first)[0];
    let right_leaf = if first == last { leaves(last)[1] } else { leaves(last)[0] };
    let mut spine = Vec::with_capacity(path.len() + 2);
    spine.push(left_leaf);
    spine.extend_from_slice(&path);
    spine.push(right_leaf);
    if spine[0] > *spine.last().unwrap() {
        spine.reverse();
    }
    let on_spine = |w: usize| w == spine[0] || w == *spine.last().unwrap();
    let pendants = spine
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == 0 || i + 1 == spine.len() {
                Vec::new()
            } else {
                leaves(v).into_iter().filter(|&w| !on_spine(w)).collect()
            }
        })
        .collect();
    Ok(SpineComponent { spine, pendants })
}

/// A single caterpillar given by the pendant count of each spine position. Spine vertices
/// are `0..t` from left to right; pendants follow in spine order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Caterpillar {
    pendants: Vec<usize>,
}

impl Caterpillar {
    /// Caterpillar with the given pendant counts. Panics on an empty spine.
    pub fn new(pendants: Vec<usize>) -> Self {
        assert!(!pendants.is_empty(), "a caterpillar needs a nonempty spine");
        Caterpillar { pendants }
    }

    /// Path on `n` spine vertices.
    pub fn path(n: usize) -> Self {
        Caterpillar::new(vec![0; n])
    }

    /// Path `v_1 .. v_len` with one pendant on `v_at` (1-based).
    pub fn path_with_pendant(at: usize, len: usize) -> Self {
        assert!((1..=len).contains(&at), "pendant position out of range");
        let mut p = vec![0; len];
        p[at - 1] = 1;
        Caterpillar::new(p)
    }

    pub fn profile(&self) -> &[usize] {
        &self.pendants
    }

    pub fn spine_len(&self) -> usize {
        self.pendants.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.pendants.len() + self.pendants.iter().sum::<usize>()
    }

    /// Adds `x` pendants to the left spine end.
    pub fn with_left_pendants(&self, x: usize) -> Self {
        let mut p = self.pendants.clone();
        p[0] += x;
        Caterpillar::new(p)
    }

    /// Joins the right spine end of `self` to the left spine end of `other`.
    pub fn concat(&self, other: &Caterpillar) -> Self {
        let mut p = self.pendants.clone();
        p.extend_from_slice(&other.pendants);
        Caterpillar::new(p)
    }

    /// The caterpillar as a graph. Spine vertices are `0..t`; pendants are numbered after
    /// them in spine order.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.vertex_count());
        let t = self.spine_len();
        for i in 1..t {
            g.add_edge(i - 1, i);
        }
        let mut next = t;
        for (i, &c) in self.pendants.iter().enumerate() {
            for _ in 0..c {
                g.add_edge(i, next);
                next += 1;
            }
        }
        g
    }

    /// The explicit-spine structure matching [`Caterpillar::graph`].
    pub fn structure(&self) -> CaterpillarStructure {
        let t = self.spine_len();
        let mut next = t;
        let pendants = self
            .pendants
            .iter()
            .map(|&c| {
                let ids: Vec<usize> = (next..next + c).collect();
                next += c;
                ids
            })
            .collect();
        let comp = SpineComponent { spine: (0..t).collect(), pendants };
        CaterpillarStructure::from_components(self.vertex_count(), vec![comp])
    }
}
