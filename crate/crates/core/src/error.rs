use thiserror::Error;

use crate::gf2::Subspace;

/// Errors reported by the analysis and construction routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector {value:#x} does not fit in F_2^{n}")]
    VectorOutOfRange { value: u32, n: usize },

    #[error("number of variables {n} outside the supported range 1..={max}")]
    UnsupportedDimension { n: usize, max: usize },

    #[error("requested rank {r} exceeds ambient dimension {n}")]
    RankTooLarge { r: usize, n: usize },

    #[error("function is not bent")]
    NotBent,

    #[error("map is not a permutation")]
    NotPermutation,

    #[error("map is affine; a nonlinear permutation is required")]
    AffineInput,

    #[error("field elements belong to different fields")]
    FieldMismatch,

    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {m}")]
    ReducibleModulus { modulus: u32, m: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("permutation lacks the P1 property; vanishing 2-space {witness}")]
    NotP1 { witness: Subspace },

    #[error("permutation has a vanishing subspace of dimension {}: {witness}", witness.dim())]
    VanishingSubspace { witness: Subspace },

    #[error("second derivatives of the two permutations coincide on {witness}")]
    EqualSecondDerivatives { witness: Subspace },

    #[error("permutation has no nonzero linear structure")]
    NoLinearStructure,

    #[error("permutation has no vanishing hyperplane")]
    NoVanishingHyperplane,

    #[error("constructed subspace failed verification")]
    WitnessRejected,

    #[error("function must be balanced")]
    Unbalanced,

    #[error("function must vanish at the origin")]
    NonzeroAtOrigin,

    #[error("member {index} of the quadruple is not bent")]
    QuadrupleMemberNotBent { index: usize },

    #[error("concatenation is not bent")]
    ConcatenationNotBent,

    #[error("quadruple shares {count} M-subspaces of dimension {dim}; exactly one is required")]
    SharedSubspaceNotUnique { count: usize, dim: usize },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("an even number of variables is required, got {0}")]
    OddDimension(usize),

    #[error("checkpoint was recorded for a different function")]
    CheckpointMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
