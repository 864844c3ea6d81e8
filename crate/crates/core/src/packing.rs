//! Solution-tight packings of caterpillar forests and their α-merged coarsenings.
//!
//! On a caterpillar with a fixed spine, the solution-tight packing is built greedily from
//! the left: take the shortest spine prefix that, together with all pendants of its spine
//! vertices, reaches `d + 1` vertices, cut it off and repeat. Its size equals the minimum
//! `d`-coc set size, and the rightmost spine vertices of the packed graphs form such a set.

use crate::caterpillar::{Caterpillar, CaterpillarStructure};
use crate::error::{Error, Result};

/// Spine positions `first..=last` of one component, with all their pendants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub first: usize,
    pub last: usize,
}

impl Interval {
    /// Number of spine vertices in the interval.
    pub fn spine_len(&self) -> usize {
        self.last - self.first + 1
    }
}

/// Packed graphs of one component, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentPacking {
    pub graphs: Vec<Interval>,
    /// Solution-tight graphs not absorbed by merging (always empty for α = 1).
    pub leftover: Vec<Interval>,
    /// Spine suffix not covered by the solution-tight packing.
    pub tail: Option<Interval>,
}

/// Packing of a caterpillar forest: one [`ComponentPacking`] per component of the structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    /// Merge factor; 1 for the solution-tight packing.
    pub alpha: usize,
    pub components: Vec<ComponentPacking>,
}

impl Packing {
    /// Total number of packed graphs.
    pub fn len(&self) -> usize {
        self.components.iter().map(|c| c.graphs.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vertex set of packed graph `index` of component `component`, ascending.
    pub fn vertices(&self, cs: &CaterpillarStructure, component: usize, index: usize) -> Vec<usize> {
        let iv = self.components[component].graphs[index];
        cs.components[component].interval_vertices(iv.first, iv.last)
    }

    /// `(component, index)` pairs in component order, then left to right.
    pub fn graph_ids(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.components.iter().enumerate().flat_map(|(c, p)| (0..p.graphs.len()).map(move |i| (c, i)))
    }
}

/// Greedy packing of one caterpillar given by its pendant counts. Returns the packed
/// intervals and the uncovered spine suffix.
pub fn pack_profile(profile: &[usize], d: usize) -> (Vec<Interval>, Option<Interval>) {
    let mut graphs = Vec::new();
    let mut start = 0;
    let mut size = 0;
    for (i, &p) in profile.iter().enumerate() {
        size += 1 + p;
        if size > d {
            graphs.push(Interval { first: start, last: i });
            start = i + 1;
            size = 0;
        }
    }
    let tail = (start < profile.len()).then(|| Interval { first: start, last: profile.len() - 1 });
    (graphs, tail)
}

/// Solution-tight packing of a single compact caterpillar.
pub fn pack_caterpillar(c: &Caterpillar, d: usize) -> (Vec<Interval>, Option<Interval>) {
    pack_profile(c.profile(), d)
}

/// The solution-tight packing of every component of the structure.
pub fn solution_tight_packing(cs: &CaterpillarStructure, d: usize) -> Packing {
    let components = cs
        .components
        .iter()
        .map(|c| {
            let (graphs, tail) = pack_profile(&c.profile(), d);
            ComponentPacking { graphs, leftover: Vec::new(), tail }
        })
        .collect();
    Packing { alpha: 1, components }
}

/// Fuses each `alpha` consecutive graphs of a solution-tight packing, per component.
/// Trailing graphs that do not fill a group are kept in `leftover`.
pub fn merged_packing(p: &Packing, alpha: usize) -> Result<Packing> {
    if alpha == 0 {
        return Err(Error::InvalidAlpha);
    }
    if p.alpha != 1 {
        return Err(Error::InvalidArgument("merging requires a solution-tight packing".into()));
    }
    let components = p
        .components
        .iter()
        .map(|c| {
            let t = c.graphs.len() / alpha;
            let graphs = (0..t)
                .map(|i| Interval { first: c.graphs[i * alpha].first, last: c.graphs[i * alpha + alpha - 1].last })
                .collect();
            ComponentPacking { graphs, leftover: c.graphs[t * alpha..].to_vec(), tail: c.tail }
        })
        .collect();
    Ok(Packing { alpha, components })
}

/// Whether `w` (vertices of one component) is exactly a union of graphs of the
/// solution-tight packing `p`.
pub fn is_merged_graph(p: &Packing, cs: &CaterpillarStructure, w: &[usize]) -> bool {
    let Some(&first) = w.first() else {
        return true;
    };
    let Some(role) = cs.role.get(first).copied().flatten() else {
        return false;
    };
    let comp = role.component();
    let mut wanted: Vec<usize> = w.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    let mut union = Vec::new();
    for i in 0..p.components[comp].graphs.len() {
        let verts = p.vertices(cs, comp, i);
        let hit = verts.iter().any(|v| wanted.binary_search(v).is_ok());
        if hit {
            union.extend(verts);
        }
    }
    union.sort_unstable();
    union == wanted
}
