//! Problem instances and the line-oriented instance file format.
//!
//! ```text
//! p coc <n> <d> <k>
//! m <id> <id> ...
//! e <u> <v>
//! a <u> <v>
//! ```
//! `#` starts a comment. Ids are 0-based. `a` lines are only accepted by
//! [`parse_annotated`].

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Graph, component-size bound `d`, budget `k` and modulator `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub graph: Graph,
    pub d: usize,
    pub k: i64,
    /// Sorted, duplicate-free modulator vertices.
    pub modulator: Vec<usize>,
}

impl Instance {
    /// Creates an instance, normalizing the modulator. Panics if `d == 0` or an id is out of range.
    pub fn new(graph: Graph, d: usize, k: i64, modulator: impl IntoIterator<Item = usize>) -> Self {
        assert!(d >= 1, "d must be positive");
        let mut modulator: Vec<usize> = modulator.into_iter().collect();
        modulator.sort_unstable();
        modulator.dedup();
        assert!(modulator.iter().all(|&v| v < graph.n()), "modulator id out of range");
        Instance { graph, d, k, modulator }
    }

    /// Modulator membership mask.
    pub fn modulator_mask(&self) -> Vec<bool> {
        crate::graph::mask_of(self.graph.n(), &self.modulator)
    }

    /// Canonical yes-instance: one vertex, `d = 1`, `k = 1`.
    pub fn trivial_yes() -> Self {
        Instance::new(Graph::new(1), 1, 1, [])
    }

    /// Canonical no-instance: one vertex, `d = 1`, `k = -1`.
    pub fn trivial_no() -> Self {
        Instance::new(Graph::new(1), 1, -1, [])
    }
}

/// Instance together with annotation pairs inside the modulator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnotatedInstance {
    pub instance: Instance,
    /// Sorted pairs `(u, v)` with `u < v`, both in the modulator.
    pub annotations: Vec<(usize, usize)>,
}

impl AnnotatedInstance {
    /// Creates an annotated instance, normalizing pair order. Panics if a pair leaves `M`.
    pub fn new(instance: Instance, annotations: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = annotations.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        for &(u, v) in &set {
            assert!(u != v, "annotation must join two distinct vertices");
            assert!(
                instance.modulator.binary_search(&u).is_ok() && instance.modulator.binary_search(&v).is_ok(),
                "annotation {u} {v} leaves the modulator"
            );
        }
        AnnotatedInstance { instance, annotations: set.into_iter().collect() }
    }
}

/// Parses an instance file; annotation lines are rejected.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let (inst, annotations) = parse_lines(text, false)?;
    debug_assert!(annotations.is_empty());
    Ok(inst)
}

/// Parses an instance file that may carry `a` lines.
pub fn parse_annotated(text: &str) -> Result<AnnotatedInstance> {
    let (instance, annotations) = parse_lines(text, true)?;
    Ok(AnnotatedInstance { instance, annotations })
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn parse_lines(text: &str, allow_annotations: bool) -> Result<(Instance, Vec<(usize, usize)>)> {
    let mut header: Option<(usize, usize, i64)> = None;
    let mut graph = Graph::new(0);
    let mut modulator = BTreeSet::new();
    let mut annotations = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        if !raw.is_ascii() {
            return Err(syntax(line, "non-ASCII character"));
        }
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_ascii_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields[0] == "p" {
            if header.is_some() {
                return Err(syntax(line, "second header"));
            }
            if fields.len() != 5 || fields[1] != "coc" {
                return Err(syntax(line, "expected `p coc <n> <d> <k>`"));
            }
            let n: usize = fields[2].parse().map_err(|_| syntax(line, "bad vertex count"))?;
            let d: usize = fields[3].parse().map_err(|_| syntax(line, "bad bound d"))?;
            let k: i64 = fields[4].parse().map_err(|_| syntax(line, "bad budget k"))?;
            if d == 0 {
                return Err(syntax(line, "d must be at least 1"));
            }
            header = Some((n, d, k));
            graph = Graph::new(n);
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(Error::MissingHeader);
        };
        let id = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| syntax(line, format!("bad vertex id `{s}`")))?;
            if v >= n {
                return Err(Error::IdOutOfRange { line, id: v, n });
            }
            Ok(v)
        };
        match fields[0] {
            "m" => {
                for f in &fields[1..] {
                    modulator.insert(id(f)?);
                }
            }
            "e" | "a" => {
                if fields.len() != 3 {
                    return Err(syntax(line, "expected two vertex ids"));
                }
                let (u, v) = (id(fields[1])?, id(fields[2])?);
                if u == v {
                    return Err(Error::Loop { line, v: u });
                }
                if fields[0] == "e" {
                    if !graph.add_edge(u, v) {
                        return Err(Error::DuplicateEdge { line, u, v });
                    }
                } else {
                    if !allow_annotations {
                        return Err(syntax(line, "annotations are not allowed here"));
                    }
                    annotations.push((u.min(v), u.max(v), line));
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let (_, d, k) = header.ok_or(Error::MissingHeader)?;
    let mut pairs = BTreeSet::new();
    for (u, v, line) in annotations {
        if !modulator.contains(&u) || !modulator.contains(&v) {
            return Err(Error::AnnotationOutsideModulator { line, u, v });
        }
        pairs.insert((u, v));
    }
    let inst = Instance { graph, d, k, modulator: modulator.into_iter().collect() };
    Ok((inst, pairs.into_iter().collect()))
}

/// Canonical serialization: header, sorted modulator line, edges in lexicographic order.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "p coc {} {} {}", inst.graph.n(), inst.d, inst.k).unwrap();
    if !inst.modulator.is_empty() {
        out.push('m');
        for v in &inst.modulator {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (u, v) in inst.graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Canonical serialization of an annotated instance; annotations follow the edges.
pub fn write_annotated(a: &AnnotatedInstance) -> String {
    let mut out = write_instance(&a.instance);
    for (u, v) in &a.annotations {
        writeln!(out, "a {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_file() {
        let inst = parse_instance("p coc 2 1 1\nm 0\ne 0 1\n").unwrap();
        assert_eq!(inst.graph, Graph::path(2));
        assert_eq!((inst.d, inst.k), (1, 1));
        assert_eq!(inst.modulator, vec![0]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_instance("p coc 2 1 1\ne 0 0\n"), Err(Error::Loop { line: 2, v: 0 }));
        assert_eq!(
            parse_instance("# c\np coc 2 1 1\ne 0 1\ne 1 0\n"),
            Err(Error::DuplicateEdge { line: 4, u: 1, v: 0 })
        );
        assert_eq!(parse_instance("p coc 2 1 1\nm 2\n"), Err(Error::IdOutOfRange { line: 2, id: 2, n: 2 }));
        assert_eq!(parse_instance("e 0 1\n"), Err(Error::MissingHeader));
        assert_eq!(parse_instance("# only\n"), Err(Error::MissingHeader));
        assert!(matches!(parse_instance("p coc 2 1 1\nx 1\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_instance("p coc 2 1 1\na 0 1\n"), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn negative_budget_round_trips() {
        let inst = Instance::new(Graph::path(3), 2, -3, [1]);
        let text = write_instance(&inst);
        assert_eq!(text, "p coc 3 2 -3\nm 1\ne 0 1\ne 1 2\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn write_canonicalizes() {
        let text = "p coc 4 2 1 # header\nm 3 1\nm 1\ne 3 2\ne 0 1\n";
        let once = write_instance(&parse_instance(text).unwrap());
        assert_eq!(once, "p coc 4 2 1\nm 1 3\ne 0 1\ne 2 3\n");
        assert_eq!(write_instance(&parse_instance(&once).unwrap()), once);
    }

    #[test]
    fn annotations_must_stay_in_modulator() {
        let a = parse_annotated("p coc 3 1 1\nm 0 1\ne 0 2\na 1 0\n").unwrap();
        assert_eq!(a.annotations, vec![(0, 1)]);
        assert_eq!(parse_annotated(&write_annotated(&a)).unwrap(), a);
        assert_eq!(
            parse_annotated("p coc 3 1 1\nm 0\na 0 2\n"),
            Err(Error::AnnotationOutsideModulator { line: 3, u: 0, v: 2 })
        );
    }
}
