//! Exact arithmetic for pure prime degree number fields `Q(m^(1/p))`.
//!
//! Fields are parametrized by strongly carefree tuples `(a_1, ..., a_{p-1})`
//! with `m = prod a_i^i`. From a tuple the crate derives the discriminant,
//! an integral basis, the Gram matrix of the Minkowski lattice and the
//! shape of the trace-zero sublattice, all with exact entries. Around that
//! sit the determinant identities behind the volume computation, the local
//! densities of the carefree sieve, and a census that counts fields by
//! discriminant and shape window.
//!
//! Exact quantities use arbitrary-precision integers and rationals. Numeric
//! routines are generic over [`Real`] (implemented for `f32` and `f64`);
//! the aliases below fix the common concrete choices.

pub mod arith;
pub mod census;
pub mod densities;
pub mod determinants;
mod error;
pub mod fields;
mod fixed;
pub mod linalg;
pub mod measure;
pub mod radical;
mod scalar;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub use census::{CensusReport, RegionSpec, TypeFilter};
pub use densities::{Normalization, PredictedConstants};
pub use determinants::ClassNumberData;
pub use fields::{PureField, Ramification, ScTuple};
pub use radical::{RadicalBase, RadicalMonomial, RadicalSum, RealApprox};
pub use shapes::{GramMatrix, ShapeVector, ShapeWindow};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Exact integer matrix (exponent and determinant work).
pub type IntMatrix = linalg::Matrix<Integer>;
/// Exact rational matrix (change of basis).
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Double precision matrix.
pub type MatrixF64 = linalg::Matrix<f64>;
/// Single precision matrix.
pub type MatrixF32 = linalg::Matrix<f32>;
