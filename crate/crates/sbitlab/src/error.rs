//! Crate-wide error type.
//!
//! Errors fall into three rough families, which the CLI maps to exit codes:
//! malformed operands and netlists (usage/structural), exhaustive-sweep caps
//! (resource), and algorithm-level inconsistencies (domain).

use thiserror::Error;

use crate::gates::GateKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty basis word set (the sum has no neutral element)")]
    EmptySet,

    #[error("bad word literal {text:?}: {reason}")]
    WordParse { text: String, reason: &'static str },

    #[error("word {word} is not a basis word (contains s)")]
    NonBasisWord { word: String },

    #[error("arity mismatch for {gate}: expected {expected} input sbits, got {got}")]
    ArityMismatch {
        gate: GateKind,
        expected: usize,
        got: usize,
    },

    #[error("malformed basis table: {reason}")]
    BadTable { reason: String },

    #[error(
        "{what} over {base}^{width} = {evals} inputs exceeds cap {cap} (raise --cap to proceed)"
    )]
    CapExceeded {
        what: &'static str,
        base: u32,
        width: usize,
        evals: u128,
        cap: usize,
    },

    #[error("netlist line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("malformed netlist{}: {reason}", node.map(|n| format!(" at node {n}")).unwrap_or_default())]
    Structure { node: Option<usize>, reason: String },

    #[error("rail vector has odd length {len}")]
    RailLength { len: usize },

    #[error("invalid rail encoding: pair {pair} is 00")]
    InvalidRailPair { pair: usize },

    #[error("oracle is not weakly additive (witness {witness})")]
    NotWAdditive { witness: String },

    #[error("oracle is not a point function: {reason}")]
    NotPointFunction { reason: String },

    #[error("oracle inconsistent with decoded word {decoded}: basis evaluation is not 1")]
    OracleInconsistent { decoded: String },

    #[error("classifier oracle must have exactly 1 output sbit, got {outputs}")]
    MultiOutputOracle { outputs: usize },
}

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::NotWAdditive { .. }
            | Error::NotPointFunction { .. }
            | Error::OracleInconsistent { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
