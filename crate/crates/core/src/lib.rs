//! Exact computation of Schur Q-functions, factorial Schur Q-functions and the
//! spectrum of the Capelli operators for the queer Lie superalgebra `q(n)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: strict partitions, containment, the total order used for
//!   triangular systems, and shifted standard tableaux.
//! - [`polyring`]: sparse multivariate polynomials over the rationals.
//! - [`qfunctions`]: `Q_λ(x|a)`, `Q_λ` and `Q*_λ`, plus an interpolation route
//!   and basis expansion.
//! - [`capelli`]: closed-form spectral data (eigenvalue polynomials,
//!   Capelli eigenvalues, the Nazarov scalar and Harish-Chandra image).
//! - [`repsim`]: a brute-force model of the super-polynomial algebra on `q(n)`
//!   that builds the Capelli operators from dual bases and measures their
//!   spectra.
//! - [`verify`]: the check runner behind `qcap verify`.

pub mod capelli;
pub mod error;
pub mod linalg;
pub mod modular;
pub mod partitions;
pub mod polyring;
pub mod qfunctions;
pub mod repsim;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::StrictPartition;
pub use polyring::MultiPoly;
pub use scalar::ExactScalar;
