//! Kernelization toolkit for Component Order Connectivity (COC) parameterized by the
//! size of a modulator to caterpillar forests.
//!
//! A `d`-coc set of a graph is a vertex set whose deletion leaves only components with
//! at most `d` vertices. The crate provides the instance model and file format, exact
//! solvers, solution-tight packings, caterpillar essences and the essence monoid, the two
//! reduction rules, the kernelization pipeline and hardness-reduction generators.

pub mod caterpillar;
pub mod error;
pub mod essence;
pub mod expansion;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod monoid;
pub mod packing;
pub mod pipeline;
pub mod rules;
pub mod solve;

pub use caterpillar::{recognize_caterpillar_forest, Caterpillar, CaterpillarStructure, Role, SpineComponent};
pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{parse_annotated, parse_instance, write_annotated, write_instance, AnnotatedInstance, Instance};
pub use monoid::{BasicFn, MonoidFn};
pub use pipeline::{kernelize_deg2, kernelize_pw1, KernelReport, Outcome};
pub use solve::{opt_brute, Solution};
