use thiserror::Error;

/// Errors raised by the combinatorial and algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label} is outside [{size}]")]
    LabelOutOfRange { label: usize, size: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("ground sets differ")]
    GroundMismatch,

    #[error("slot {slot} out of range 1..={max}")]
    SlotOutOfRange { slot: usize, max: usize },

    #[error("arity violation: {0}")]
    Arity(String),

    #[error("unstable configuration: {0}")]
    Unstable(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("generator universes differ")]
    UniverseMismatch,

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },

    #[error("relation is not homogeneous")]
    Inhomogeneous,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("coefficient {0} is not defined over the coefficient field")]
    BadCoefficient(String),

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("color mismatch at slot {slot}: input color {input}, output color {output}")]
    ColorMismatch {
        slot: usize,
        input: &'static str,
        output: &'static str,
    },

    #[error("out of scope: {0}")]
    OutOfScope(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
