//! The kernelization pipeline for modulators to caterpillar forests, and its variant for
//! modulators to graphs whose components are cycles or caterpillars.

use crate::caterpillar::recognize_caterpillar_forest;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::rules::{rule1_reduce_components, rule2_merge_factor, rule2_replace_spine, rule2_threshold};
use crate::solve::opt_caterpillar_forest;
use std::fmt::Write as _;

/// Closed-form quantities of the kernel for given `d` and `m = |M|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub d: usize,
    pub m: usize,
    /// Merge factor of Rule 2.
    pub c_p: usize,
    /// Rule 2 applies above this many merged graphs.
    pub rule2_threshold: usize,
    /// Components of `G - M` after Rule 1 with `b = 2`: `(2d - 1)·m²`.
    pub component_bound: usize,
    /// Spine vertices after reduction: `48d⁶m³ + 12d⁵m⁴`.
    pub spine_bound: usize,
    /// Budgets at least `48d⁶m³ + 13d⁵m⁴` give a trivial yes-instance.
    pub trivial_yes_bound: usize,
}

/// Bound values for `d >= 1` and `m >= 0`.
pub fn bounds(d: usize, m: usize) -> Bounds {
    let d5m4 = d.pow(5) * m.pow(4);
    let d6m3 = d.pow(6) * m.pow(3);
    Bounds {
        d,
        m,
        c_p: rule2_merge_factor(d, m),
        rule2_threshold: rule2_threshold(d, m),
        component_bound: (2 * d - 1) * m * m,
        spine_bound: 48 * d6m3 + 12 * d5m4,
        trivial_yes_bound: 48 * d6m3 + 13 * d5m4,
    }
}

/// Result of a kernelization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    TrivialYes,
    TrivialNo,
    Reduced(Instance),
}

impl Outcome {
    /// The output as an instance; trivial outcomes become the canonical one-vertex instances.
    pub fn instance(&self) -> Instance {
        match self {
            Outcome::TrivialYes => Instance::trivial_yes(),
            Outcome::TrivialNo => Instance::trivial_no(),
            Outcome::Reduced(inst) => inst.clone(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::TrivialYes => "trivial-yes",
            Outcome::TrivialNo => "trivial-no",
            Outcome::Reduced(_) => "reduced",
        }
    }
}

/// Quantities of the cycle-promotion stage of [`kernelize_deg2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deg2Stage {
    pub components_after_rule1: usize,
    pub cycles_promoted: usize,
    pub modulator_size: usize,
    /// `((d - 1)·3 + 1)·m³ + m` for the input modulator size `m`.
    pub modulator_bound: usize,
}

/// Outcome of a kernelization together with the quantities it was certified by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    /// Bounds for the modulator handed to the caterpillar-forest stage.
    pub bounds: Bounds,
    pub deg2: Option<Deg2Stage>,
    pub rule2_iterations: usize,
    pub components_after_rule1: usize,
    pub spine_size: usize,
    pub k: i64,
    pub outcome: Outcome,
    /// Provenance log of every rule application.
    pub log: Vec<String>,
}

impl KernelReport {
    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let b = &self.bounds;
        let mut s = String::new();
        let mut line = |k: &str, v: String| writeln!(s, "{k}: {v}").unwrap();
        line("outcome", self.outcome.label().into());
        line("d", b.d.to_string());
        line("modulator_size", b.m.to_string());
        if let Some(st) = &self.deg2 {
            line("deg2_components_after_rule1", st.components_after_rule1.to_string());
            line("deg2_cycles_promoted", st.cycles_promoted.to_string());
            line("deg2_modulator_bound", st.modulator_bound.to_string());
        }
        line("rule2_iterations", self.rule2_iterations.to_string());
        line("components_after_rule1", self.components_after_rule1.to_string());
        line("spine_size", self.spine_size.to_string());
        line("k", self.k.to_string());
        line("c_p", b.c_p.to_string());
        line("rule2_threshold", b.rule2_threshold.to_string());
        line("component_bound", b.component_bound.to_string());
        line("spine_bound", b.spine_bound.to_string());
        line("trivial_yes_bound", b.trivial_yes_bound.to_string());
        s
    }
}

/// Kernelization for a modulator to a caterpillar forest: solve outright without a
/// modulator; otherwise apply Rule 2 until it no longer applies, then Rule 1 with `b = 2`,
/// and finish with the trivial-instance checks.
pub fn kernelize_pw1(inst: &Instance) -> Result<KernelReport> {
    let d = inst.d;
    let m = inst.modulator.len();
    let b = bounds(d, m);
    let mut log = Vec::new();
    if m == 0 {
        let cs = recognize_caterpillar_forest(&inst.graph, &[])?;
        let opt = opt_caterpillar_forest(&cs, d);
        log.push(format!("pw1: no modulator, opt={opt}"));
        let outcome = if opt as i64 <= inst.k { Outcome::TrivialYes } else { Outcome::TrivialNo };
        return Ok(KernelReport {
            bounds: b,
            deg2: None,
            rule2_iterations: 0,
            components_after_rule1: cs.components.len(),
            spine_size: cs.spine_size(),
            k: inst.k,
            outcome,
            log,
        });
    }
    let mut cur = inst.clone();
    let mut rule2_iterations = 0;
    loop {
        match rule2_replace_spine(&cur) {
            Ok((next, report)) => {
                log.extend(report.log);
                cur = next;
                rule2_iterations += 1;
            }
            Err(Error::NotApplicable) => break,
            Err(e) => return Err(e),
        }
    }
    let (cur, r1) = rule1_reduce_components(&cur, 2)?;
    log.extend(r1.log);
    let cs = recognize_caterpillar_forest(&cur.graph, &cur.modulator)?;
    let components = cs.components.len();
    let spine = cs.spine_size();
    let mut report = KernelReport {
        bounds: b,
        deg2: None,
        rule2_iterations,
        components_after_rule1: components,
        spine_size: spine,
        k: cur.k,
        outcome: Outcome::TrivialNo,
        log,
    };
    if cur.k < 0 {
        return Ok(report);
    }
    assert!(components <= b.component_bound, "component bound violated");
    assert!(spine <= b.spine_bound, "spine bound violated");
    let k = cur.k as usize;
    report.outcome =
        if k >= b.trivial_yes_bound || k >= m + spine { Outcome::TrivialYes } else { Outcome::Reduced(cur) };
    Ok(report)
}

fn is_cycle(graph: &Graph, removed: &[bool], comp: &[usize]) -> bool {
    comp.len() >= 3 && comp.iter().all(|&v| graph.neighbors(v).iter().filter(|&&w| !removed[w]).count() == 2)
}

/// Kernelization for a modulator to graphs whose components are cycles or caterpillars:
/// Rule 1 with `b = 3`, then one vertex of every remaining cycle joins the modulator, then
/// [`kernelize_pw1`].
pub fn kernelize_deg2(inst: &Instance) -> Result<KernelReport> {
    let removed = inst.modulator_mask();
    for comp in inst.graph.components_avoiding(&removed) {
        if !is_cycle(&inst.graph, &removed, &comp) {
            let (sub, _) = inst.graph.induced(&comp);
            recognize_caterpillar_forest(&sub, &[]).map_err(|_| Error::ClassViolation(comp[0]))?;
        }
    }
    let m = inst.modulator.len();
    let (cur, r1) = rule1_reduce_components(inst, 3)?;
    let removed = cur.modulator_mask();
    let comps = cur.graph.components_avoiding(&removed);
    let cycle_reps: Vec<usize> = comps.iter().filter(|c| is_cycle(&cur.graph, &removed, c)).map(|c| c[0]).collect();
    let promoted =
        Instance::new(cur.graph.clone(), cur.d, cur.k, cur.modulator.iter().copied().chain(cycle_reps.iter().copied()));
    let stage = Deg2Stage {
        components_after_rule1: comps.len(),
        cycles_promoted: cycle_reps.len(),
        modulator_size: promoted.modulator.len(),
        modulator_bound: ((inst.d - 1) * 3 + 1) * m.pow(3) + m,
    };
    assert!(stage.modulator_size <= stage.modulator_bound, "modulator bound violated");
    let mut report = kernelize_pw1(&promoted)?;
    let mut log = r1.log;
    log.push(format!("deg2: promoted {} cycle vertices {:?}", cycle_reps.len(), cycle_reps));
    log.append(&mut report.log);
    report.log = log;
    report.deg2 = Some(stage);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::opt_brute;

    #[test]
    fn bound_values() {
        let b = bounds(1, 1);
        assert_eq!(b.spine_bound, 60);
        assert_eq!(b.c_p, 6);
        assert_eq!(b.trivial_yes_bound, 61);
        assert_eq!(b.component_bound, 1);
        assert!(bounds(2, 1).spine_bound > b.spine_bound && bounds(1, 2).spine_bound > b.spine_bound);
    }

    #[test]
    fn no_modulator_is_solved() {
        let inst = Instance::new(Graph::path(6), 2, 2, []);
        assert_eq!(kernelize_pw1(&inst).unwrap().outcome, Outcome::TrivialYes);
        let inst = Instance::new(Graph::path(6), 2, 1, []);
        assert_eq!(kernelize_pw1(&inst).unwrap().outcome, Outcome::TrivialNo);
    }

    #[test]
    fn large_budget_is_trivial_yes() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        // M ∪ spine has 1 + 3 vertices.
        let inst = Instance::new(g.clone(), 1, 4, [0]);
        assert_eq!(kernelize_pw1(&inst).unwrap().outcome, Outcome::TrivialYes);
        let inst = Instance::new(g, 1, 3, [0]);
        assert_eq!(kernelize_pw1(&inst).unwrap().outcome, Outcome::Reduced(inst));
    }

    #[test]
    fn short_cycle_is_promoted() {
        // C4 with one modulator vertex hanging off it.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0)]);
        for k in 0..3 {
            let inst = Instance::new(g.clone(), 2, k, [4]);
            let report = kernelize_deg2(&inst).unwrap();
            let expected = opt_brute(&g, 2).unwrap().size() as i64 <= k;
            let got = match report.outcome {
                Outcome::TrivialYes => true,
                Outcome::TrivialNo => false,
                Outcome::Reduced(r) => opt_brute(&r.graph, 2).unwrap().size() as i64 <= r.k,
            };
            assert_eq!(got, expected, "k = {k}");
        }
    }

    #[test]
    fn non_class_components_are_rejected() {
        let g = Graph::complete(4);
        let inst = Instance::new(g, 1, 2, []);
        assert_eq!(kernelize_deg2(&inst), Err(Error::ClassViolation(0)));
    }
}
