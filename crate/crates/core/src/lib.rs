//! Exact exterior algebra over a finite orthonormal basis.
//!
//! Multivectors carry coefficients in any [`Scalar`] field with conjugation:
//! [`Rational`] for the Euclidean case and [`Gaussian`] for the Hermitian one.
//! All arithmetic is exact.
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod decompose;
pub mod error;
pub mod fermion;
pub mod index;
pub mod linalg;
pub mod multivector;
pub mod scalar;
pub mod simplicity;
pub mod spaces;

pub use error::{Error, Result, MAX_DIM};
pub use index::{Blade, IndexTuple};
pub use linalg::{LinearMap, Matrix, Subspace};
pub use multivector::Multivector;
pub use scalar::{rational, Gaussian, Rational, Scalar};
