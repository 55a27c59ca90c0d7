// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight sequence is empty")]
    Empty,

    #[error("weight {index} is not finite or is out of the supported range: {value}")]
    WeightOutOfRange { index: usize, value: f64 },

    #[error("sequence length {n} exceeds the oracle bound {bound}")]
    OracleBound { n: usize, bound: usize },

    #[error("length mismatch: {left} depths for {right} weights")]
    LengthMismatch { left: usize, right: usize },

    #[error("depth profile is not realized by a strictly binary tree (reduction fails at index {index})")]
    InfeasibleProfile { index: usize },

    #[error("index {index} out of range for {n} leaves")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("position {0} is already set")]
    AlreadySet(usize),

    #[error("position {0} has an integral weight and cannot be set")]
    IntegralWeight(usize),

    #[error("nothing to undo")]
    NothingToUndo,

    #[error("union of elements {0} and {1} that share a representative")]
    SameSet(u32, u32),

    #[error("no union to reverse")]
    NoUnion,

    #[error("rank {k} out of range for {len} items")]
    RankOutOfRange { k: usize, len: usize },

    #[error("distribution has no positive mass")]
    ZeroMass,

    #[error("invalid probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),

    #[error("labels are not strictly increasing at index {0}")]
    LabelOrder(usize),

    #[error("relative entropy is undefined: q = 0 but p > 0 for symbol {label:?}")]
    UndefinedRelativeEntropy { label: String },

    #[error("sample probability of symbol {label:?} is zero; no codeword can be assigned")]
    ZeroProbability { label: String },

    #[error("symbol {0:?} is not in the codebook")]
    UnknownSymbol(String),

    #[error("bit stream ends inside a codeword at bit offset {offset}")]
    DanglingSuffix { offset: usize },

    #[error("invalid codebook: {0}")]
    InvalidCodeBook(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid benchmark configuration: {0}")]
    BadConfig(String),

    #[error("algorithms disagree on trial {trial} (seed {seed}): {detail}")]
    Disagreement { seed: u64, trial: u64, detail: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures of this library rather than of its input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::Disagreement { .. })
    }
}
