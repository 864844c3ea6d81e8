//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by parsing, recognition, solvers and reduction rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: loop at vertex {v}")]
    Loop { line: usize, v: usize },
    #[error("line {line}: vertex id {id} out of range for n = {n}")]
    IdOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: annotation {u} {v} leaves the modulator")]
    AnnotationOutsideModulator { line: usize, u: usize, v: usize },
    #[error("missing header line `p coc <n> <d> <k>`")]
    MissingHeader,
    #[error("component containing vertex {0} is not a caterpillar")]
    NotCaterpillar(usize),
    #[error("component containing vertex {0} is neither a cycle nor a caterpillar")]
    ClassViolation(usize),
    #[error("input has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("modulator is not a vertex cover: edge {0} {1} avoids it")]
    ModulatorNotVc(usize, usize),
    #[error("solution-tight packing does not cover the caterpillar")]
    PackingNotFull,
    #[error("dimension mismatch: d = {0} vs d = {1}")]
    DimensionMismatch(usize, usize),
    #[error("function is not monotone in the requested direction")]
    DirectionMismatch,
    #[error("invalid monoid table: {0}")]
    InvalidTable(String),
    #[error("merge factor must be at least 1")]
    InvalidAlpha,
    #[error("reduction rule not applicable")]
    NotApplicable,
    #[error("expansion precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
