use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("weight matrix has rank {rank}, expected {expected}: action is not faithful")]
    NotFaithful { rank: usize, expected: usize },

    #[error("torsion order {0} is invalid, orders must be at least 2")]
    InvalidTorsion(String),

    #[error("the torus weights of the Laurent variables are linearly dependent")]
    DependentLaurentWeights,

    #[error("column {0} of the reduced weight block is zero")]
    ZeroColumn(usize),

    #[error("column {0} of the reduced weight block vanishes on every polynomial row")]
    Uncovered(usize),

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron has no lattice points")]
    EmptyPolyhedron,

    #[error("degree is not attained by any monomial{}", if *.certified { "" } else { " within the search bound" })]
    NotInQ { certified: bool },

    #[error("integer {0} does not fit a machine word")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
