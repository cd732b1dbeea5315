//! Exact-arithmetic invariants of graded algebras with a real structure,
//! cohomology of finite groupoids with an involution, and the Brauer-type
//! groups built from both.
//!
//! Everything is computed over exact scalars: `ℚ(i)` for algebras and their
//! matrix models, `ℤ` (via Smith normal form) for cohomology. No floats.

pub mod abelian;
pub mod algebra;
pub mod brauer;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod groupoid;
pub mod mat;
pub mod model;
pub mod point;
pub mod scalar;
pub mod smith;
pub mod verify;

pub use error::Error;

/// Exact integers used throughout the cohomology side.
pub type Int = smith::Int;
/// Exact rationals.
pub type Rat = num_rational::BigRational;
/// The Gaussian rationals `ℚ(i)`, the scalar field for algebra work.
pub type Scalar = scalar::GaussRat;
/// Dense matrix over the algebra scalar field.
pub type ScalarMat = mat::Mat<Scalar>;
/// Dense integer matrix.
pub type IntMat = smith::IntMat;
