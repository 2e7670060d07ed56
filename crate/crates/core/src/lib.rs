//! Exact symbolic engine for quantum matrix algebras.
//!
//! Builds the FRT bialgebra of quantum matrices, the quantum special linear
//! group and the reflection equation algebra from the standard R-matrix,
//! computes normal forms in them by rewriting, and certifies flatness of
//! central quotients (nilpotent cone, 2x2 orbit closures, Podleś-type
//! spheres) by comparing exact Hilbert functions and weight tables with the
//! commutative limit `q = 1`.

pub mod braided;
pub mod classical;
pub mod error;
pub mod freealg;
pub mod matrix;
pub mod podles;
pub mod quantum_matrices;
pub mod quantum_sl;
pub mod quotients;
pub mod report;
pub mod re_characters;
pub mod rmatrix;
pub mod scalars;
pub mod text;

pub use error::{Error, Result};
pub use scalars::{Field, LaurentPolynomial, RationalScalar};
