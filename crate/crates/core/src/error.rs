use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    EntryOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("column {0} is empty; nets must be non-empty")]
    EmptyColumn(usize),
    #[error("net {0} is empty; nets must be non-empty")]
    EmptyNet(usize),
    #[error("net {net} references vertex {vertex}, but there are only {vertex_count} vertices")]
    VertexOutOfBounds {
        net: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("edge {index} ({variable}, {check}) out of bounds")]
    EdgeOutOfBounds {
        index: usize,
        variable: usize,
        check: usize,
    },
    #[error("{side} node {node} has declared degree {declared} but {actual} edge(s)")]
    DegreeMismatch {
        side: &'static str,
        node: usize,
        declared: usize,
        actual: usize,
    },
    #[error("parts must be non-empty (part {0} is empty)")]
    EmptyPart(usize),
    #[error("part label {label} out of range 1..={k}")]
    LabelOutOfRange { label: usize, k: usize },
    #[error("partition needs at least one part")]
    NoParts,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid ensemble parameters: {0}")]
    InvalidParams(String),
    #[error("γn not divisible by δ (γ={gamma}, n={n}, δ={delta})")]
    NotDivisible { n: u64, gamma: u64, delta: u64 },
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("no {epsilon}-balanced {k}-way partition with non-empty parts exists for {m} vertices")]
    NoBalancedPartition { k: usize, m: usize, epsilon: String },
    #[error("invalid ratio {0:?}")]
    InvalidRatio(String),
    #[error("{0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no sample requested")]
    NoSamples,
}

pub type Result<T> = std::result::Result<T, Error>;
