//! Nonhomogeneous quadratic duality over exact arithmetic.
//!
//! The crate converts between nonhomogeneous quadratic presentations
//! (QLS/QL-algebras) and curved DG-algebras, verifies the CDG axioms and
//! duality theorems degree by degree with exact linear algebra, and computes
//! Chern character components and the Chern-Simons functor on the category
//! of CDG-algebras.
//!
//! Everything is computed over exact scalars: arbitrary-precision rationals
//! by default, or a prime field `F_p`. There are no tolerances anywhere;
//! every verdict is an exact linear-algebra statement at a stated degree
//! window.

pub mod scalar;
pub mod linalg;
pub mod linalg_sparse;
pub mod tensor;
pub mod quadratic;
pub mod nonhom;
pub mod cdg;
pub mod matrix_cdg;
pub mod bar;
pub mod charcls;
pub mod corpus;
pub mod doc;
pub mod cli;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
