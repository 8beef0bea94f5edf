//! Brute-force model of `𝒫(V)` for `V ≅ q(n)` under `𝔩 = q(n) × q(n)`.
//!
//! Everything here is computed directly from the definitions: the graded
//! components and the action operators, the multiplicity-free decomposition
//! (via joint highest-weight vectors and closure), dual bases in the
//! constant-coefficient operators, the Capelli operators `D_λ`, and the
//! spherical restriction. It serves as an independent oracle for the closed
//! forms in [`crate::capelli`].

pub mod action;
pub mod basis;
pub mod capelli_op;
pub mod decompose;
pub mod jordan;
pub mod linop;
pub mod spherical;
pub mod superpoly;

pub use action::{action_field, action_matrix, ActionKind, QElement, VectorField};
pub use basis::{component_dimension, graded_basis, GradedComponent};
pub use capelli_op::{capelli_operator, measured_eigenvalue, CapelliOperator};
pub use decompose::{decompose, dual_component, ConstCoeffOperator, Decomposition, IsotypicComponent};
pub use jordan::{jordan_check, jordan_scalar, QMatrix};
pub use linop::LinearOperator;
pub use spherical::{m_invariant_dimension, spherical_restriction, MInvariants};
pub use superpoly::{Generator, Parity, SuperMonomial, SuperPoly};
