//! Exact-arithmetic computational algebra for cone varieties and their
//! infinitesimal symmetries.
//!
//! The crate is organized around a handful of cooperating subsystems:
//!
//! - [`linalg`] — dense linear algebra over the rationals, with a prime-field
//!   mirror for fast dimension counts;
//! - [`tensors`] — symmetric multilinear forms, polarization, contraction and
//!   polynomial parametrizations;
//! - [`octonion`] — split octonions in the Zorn vector-matrix model and
//!   Hermitian 3×3 matrices over them;
//! - [`zoo`] — the catalogue of parametrized cone varieties (quadrics, Segre,
//!   Veronese, Plücker, spinor, Severi, symplectic-Grassmannian models) and
//!   linear projections of them;
//! - [`aut`] — the engine computing the Lie algebra of infinitesimal linear
//!   automorphisms of a cone and its prolongations, by two independent paths;
//! - [`roots`] — root systems, Weyl-group combinatorics, cominuscule markings
//!   and fixed-point weight data of one-parameter torus actions;
//! - [`euler`] — graded symbol systems, the nilpotent translation operators,
//!   the two opposite vector-group representations on a graded model and the
//!   bilinear bracket map into the prolongation.

pub mod aut;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod octonion;
pub mod rat;
pub mod roots;
pub mod tensors;
pub mod zoo;

pub use error::Error;
pub use rat::Rat;

/// Convenience result type used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
