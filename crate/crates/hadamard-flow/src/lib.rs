//! Gradient-flow analysis of complex Hadamard matrix spaces.
//!
//! A dephased d x d matrix with unimodular entries is a point of the
//! (d-1)^2-torus. The potential measuring failure of the Hadamard
//! conditions defines a gradient flow whose fixed points are exactly the
//! dephased complex Hadamard matrices. This crate computes:
//!
//! - the potential, flow field, and its Jacobian at machine or arbitrary
//!   precision ([`phase`]);
//! - eigenstructure of the linearized flow and the matrix defect, by the
//!   kernel of the Jacobian and independently by the linearized Hadamard
//!   conditions ([`spectral`]);
//! - center-manifold expansions over the kernel, detecting nonlinear flow
//!   that shrinks the defect's bound on family dimension ([`cm`]);
//! - point-cloud integration of the flow with PCA snapshot export
//!   ([`flow`]);
//! - exact verification of affine Hadamard families by cyclotomic
//!   arithmetic, and kernel-driven searches for new ones ([`exact`],
//!   [`family`]);
//! - a catalog of named matrices and families ([`catalog`]).

pub mod catalog;
pub mod cm;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod family;
pub mod flow;
pub mod jet;
pub mod linalg;
mod par;
pub mod phase;
pub mod precision;
pub mod real;
pub mod spectral;

pub use error::{Error, Result};
pub use precision::Precision;
pub use real::{BigReal, Real};
