//! Essences of caterpillars and synthesis of small caterpillars with a prescribed essence.
//!
//! For a caterpillar `C` with spine `v_1 .. v_t` whose solution-tight packing covers every
//! vertex, `C_x` is `C` with `x` fresh pendants on `v_1`. The essence `γ` maps `x` to the
//! smallest possible size of the component of `v_t` over all minimum `d`-coc sets of `C_x`
//! (0 if `v_t` is deleted), or to `d + 1` when `opt(C_x) > opt(C)`.

use crate::caterpillar::Caterpillar;
use crate::error::{Error, Result};
use crate::monoid::{decompose, BasicFn, MonoidFn};
use crate::packing::pack_profile;
use crate::solve::{minimum_dcoc_sets, MaskGraph, MASK_CEILING};

/// Bound on `|C| + d` accepted by [`essence_brute`].
pub const ESSENCE_BRUTE_LIMIT: usize = 18;

fn check_full(c: &Caterpillar, d: usize) -> Result<usize> {
    let (graphs, tail) = pack_profile(c.profile(), d);
    if tail.is_some() {
        return Err(Error::PackingNotFull);
    }
    Ok(graphs.len())
}

/// Essence via the solution-tight packing of each `C_x`.
pub fn essence(c: &Caterpillar, d: usize) -> Result<MonoidFn> {
    let opt = check_full(c, d)?;
    let mut table = Vec::with_capacity(d + 2);
    for x in 0..=d {
        let cx = c.with_left_pendants(x);
        let (graphs, tail) = pack_profile(cx.profile(), d);
        let value = if graphs.len() > opt {
            d + 1
        } else {
            tail.map_or(0, |iv| (iv.first..=iv.last).map(|i| 1 + cx.profile()[i]).sum())
        };
        table.push(value);
    }
    table.push(d + 1);
    MonoidFn::new(d, table)
}

/// Essence by literal evaluation of the definition over all minimum `d`-coc sets of each
/// `C_x`. Requires `|C| + d <= 18`.
pub fn essence_brute(c: &Caterpillar, d: usize) -> Result<MonoidFn> {
    let n = c.vertex_count();
    if n + d > ESSENCE_BRUTE_LIMIT {
        return Err(Error::TooLarge { n: n + d, limit: ESSENCE_BRUTE_LIMIT });
    }
    check_full(c, d)?;
    let last = c.spine_len() - 1;
    let mut opt0 = 0;
    let mut table = Vec::with_capacity(d + 2);
    for x in 0..=d {
        let g = c.with_left_pendants(x).graph();
        let (opt, sets) = minimum_dcoc_sets(&g, d, MASK_CEILING)?;
        if x == 0 {
            opt0 = opt;
        }
        let value = if opt > opt0 {
            d + 1
        } else {
            let mg = MaskGraph::new(&g);
            sets.iter().map(|&s| mg.component_size(last, s)).min().expect("a minimum set exists")
        };
        table.push(value);
    }
    table.push(d + 1);
    MonoidFn::new(d, table)
}

/// Essence by explicit enumeration of every minimum `d`-coc set of each `C_x`, searched
/// along the spine and pruned by the packing size of the unprocessed suffix. Evaluates the
/// definition like [`essence_brute`] but reaches caterpillars of up to 64 vertices.
pub fn essence_enumerate(c: &Caterpillar, d: usize) -> Result<MonoidFn> {
    let n = c.vertex_count() + d;
    if n > MASK_CEILING {
        return Err(Error::TooLarge { n, limit: MASK_CEILING });
    }
    check_full(c, d)?;
    let last = c.spine_len() - 1;
    let mut opt0 = 0;
    let mut table = Vec::with_capacity(d + 2);
    for x in 0..=d {
        let cx = c.with_left_pendants(x);
        let mut search = MinSetSearch::new(&cx, d);
        let (opt, sets) = search.minimum_sets();
        if x == 0 {
            opt0 = opt;
        }
        let value = if opt > opt0 {
            d + 1
        } else {
            let mg = MaskGraph::new(&cx.graph());
            sets.iter().map(|&s| mg.component_size(last, s)).min().expect("a minimum set exists")
        };
        table.push(value);
    }
    table.push(d + 1);
    MonoidFn::new(d, table)
}

/// Enumerates `d`-coc sets of a caterpillar (vertex ids as in [`Caterpillar::graph`]) within
/// a budget, deciding one spine vertex and its pendants at a time.
struct MinSetSearch<'a> {
    profile: &'a [usize],
    /// First pendant id of each spine position.
    pendant_base: Vec<usize>,
    /// Lower bound on the deletions needed inside positions `j..`.
    suffix_bound: Vec<usize>,
    d: usize,
    budget: usize,
    found: Vec<u64>,
}

impl<'a> MinSetSearch<'a> {
    fn new(c: &'a Caterpillar, d: usize) -> Self {
        let profile = c.profile();
        let t = profile.len();
        let mut pendant_base = Vec::with_capacity(t);
        let mut next = t;
        for &p in profile {
            pendant_base.push(next);
            next += p;
        }
        let suffix_bound = (0..=t).map(|j| pack_profile(&profile[j..], d).0.len()).collect();
        MinSetSearch { profile, pendant_base, suffix_bound, d, budget: 0, found: Vec::new() }
    }

    /// The optimum and every set attaining it.
    fn minimum_sets(&mut self) -> (usize, Vec<u64>) {
        self.budget = self.suffix_bound[0];
        loop {
            self.visit(0, 0, 0, 0);
            if !self.found.is_empty() {
                return (self.budget, std::mem::take(&mut self.found));
            }
            self.budget += 1;
        }
    }

    /// `open` is the size of the component of the previous spine vertex (0 if deleted).
    fn visit(&mut self, j: usize, open: usize, cost: usize, mask: u64) {
        if cost + self.suffix_bound[j] > self.budget {
            return;
        }
        if j == self.profile.len() {
            if cost == self.budget {
                self.found.push(mask);
            }
            return;
        }
        let p = self.profile[j];
        let base = self.pendant_base[j];
        for pend in 0u64..1 << p {
            let removed = pend.count_ones() as usize;
            let pend_mask = pend << base;
            // Delete v_j.
            self.visit(j + 1, 0, cost + 1 + removed, mask | 1 << j | pend_mask);
            // Keep v_j.
            let size = open + 1 + p - removed;
            if size <= self.d {
                self.visit(j + 1, size, cost + removed, mask | pend_mask);
            }
        }
    }
}

/// Minimum cost and smallest residual component of `v_t` among optimal `d`-coc sets, by a
/// left-to-right dynamic program over the spine.
fn spine_dp(profile: &[usize], d: usize) -> (usize, usize) {
    // best[s] = minimum deletions with the component of the current spine vertex of size s
    // (s = 0 when that vertex is deleted).
    let mut best: Vec<Option<usize>> = vec![None; d + 1];
    best[0] = Some(0);
    for &p in profile {
        let mut next: Vec<Option<usize>> = vec![None; d + 1];
        let relax = |slot: &mut Option<usize>, cost: usize| {
            if slot.is_none_or(|c| cost < c) {
                *slot = Some(cost);
            }
        };
        for (prev, cost) in best.iter().enumerate() {
            let Some(cost) = *cost else { continue };
            relax(&mut next[0], cost + 1);
            for removed in 0..=p {
                let size = prev + 1 + p - removed;
                if size <= d {
                    relax(&mut next[size], cost + removed);
                }
            }
        }
        best = next;
    }
    let opt = best.iter().flatten().copied().min().expect("deleting the spine is feasible");
    let size = best.iter().position(|&c| c == Some(opt)).expect("the optimum is attained");
    (opt, size)
}

/// Essence by an exact dynamic program over the spine, independent of packings. Serves as
/// an oracle for caterpillars beyond the reach of [`essence_brute`].
pub fn essence_dp(c: &Caterpillar, d: usize) -> Result<MonoidFn> {
    check_full(c, d)?;
    let (opt0, _) = spine_dp(c.profile(), d);
    let mut table: Vec<usize> = (0..=d)
        .map(|x| {
            let (opt, size) = spine_dp(c.with_left_pendants(x).profile(), d);
            if opt > opt0 {
                d + 1
            } else {
                size
            }
        })
        .collect();
    table.push(d + 1);
    MonoidFn::new(d, table)
}

/// Caterpillar whose essence is the given basic function and whose solution-tight packing is
/// a single graph covering it. Panics on an invalid index.
pub fn caterpillar_for_basic(b: BasicFn, d: usize) -> Caterpillar {
    assert!(b.is_valid(d), "{b} is not a basic function for d = {d}");
    match b {
        BasicFn::Id => Caterpillar::path(d + 1),
        BasicFn::Inc => Caterpillar::path_with_pendant(d + 1, d + 1),
        BasicFn::Dec(i) => Caterpillar::path_with_pendant(d - i + 1, d),
    }
}

/// Joins the right spine end of `c1` to the left spine end of `c2`. The essence of the
/// result is `essence(c2) ∘ essence(c1)`.
pub fn concat(c1: &Caterpillar, c2: &Caterpillar) -> Caterpillar {
    c1.concat(c2)
}

/// A caterpillar with essence `gamma`: the basic caterpillars of the decomposition of
/// `gamma`, concatenated in application order.
pub fn synthesize(gamma: &MonoidFn) -> Caterpillar {
    let d = gamma.d();
    decompose(gamma)
        .into_iter()
        .map(|b| caterpillar_for_basic(b, d))
        .reduce(|acc, c| acc.concat(&c))
        .expect("a decomposition is nonempty")
}
