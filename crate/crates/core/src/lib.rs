//! Exact min-plus linear algebra and transversal valuated matroids.
//!
//! The core types are generic over an ordered field [`Scalar`]; the aliases
//! below fix the exact rational instantiation used throughout the crate.

pub mod corpus;
pub mod error;
pub mod extension;
pub mod fm;
pub mod io;
pub mod lab;
pub mod matroid;
pub mod presentation;
pub mod scalar;
pub mod set;
pub mod trop;
pub mod valuated;
pub mod verify;

pub use error::{Error, Result};
pub use matroid::{CyclicFlatLattice, Matroid, SetSystem};
pub use presentation::{ApexDecomposition, Presentation};
pub use scalar::Scalar;
pub use set::ElementSet;
pub use trop::{Trop, TropMatrix, TropVector};
pub use valuated::ValuatedMatroid;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// An element of `Q ∪ {∞}`.
pub type TropScalar = Trop<Rational>;
pub type TropVec = TropVector<Rational>;
pub type TropMat = TropMatrix<Rational>;
