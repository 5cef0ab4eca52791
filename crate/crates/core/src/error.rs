use alloc::string::String;

/// Largest supported ambient dimension; basis blades are `u32` bitsets.
pub const MAX_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionCap(usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index {0}")]
    RepeatedIndex(usize),
    #[error("indices must be strictly increasing")]
    NotIncreasing,
    #[error("grades undefined at zero")]
    ZeroMultivector,
    #[error("expected a homogeneous multivector")]
    NotHomogeneous,
    #[error("expected grade {expected}, found grade {found}")]
    WrongGrade { expected: usize, found: usize },
    #[error("expected a nonzero blade")]
    NotABlade,
    #[error("not an inner blade: its span is not contained in the inner space")]
    NotInnerBlade,
    #[error("not an outer blade: the outer space is not contained in its span")]
    NotOuterBlade,
    #[error("not a factorization of M: B ^ N differs from M")]
    NotAFactorization,
    #[error("not a carving of M: N _| B differs from M")]
    NotACarving,
    #[error("subspace is not a complement: {0}")]
    NotAComplement(&'static str),
    #[error("supercommutator requires homogeneous parity")]
    MixedParity,
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroDimension)
    } else if n > MAX_DIM {
        Err(Error::DimensionCap(n))
    } else {
        Ok(())
    }
}
