//! Pollution-free computation of discrete eigenvalues of self-adjoint
//! operators in gaps of the essential spectrum.
//!
//! The standard Galerkin truncation of a self-adjoint operator can produce
//! spurious eigenvalues anywhere inside a gap of the essential spectrum.
//! This crate implements the quadratic alternative: assemble the matrix
//! polynomial `M(z) = A0 - 2 z A1 + z^2 A2` from operator inner products,
//! solve `det M(zeta) = 0`, and certify that every root `zeta` lies within
//! `|Im zeta|` of the true spectrum (plus an explicit correction when the
//! coefficient matrices are known only up to norm bounds).
//!
//! Modules:
//! - [`pencil`]: the quadratic matrix polynomial, its assembly and basis constant.
//! - [`models`]: operator models providing the inner products, including the
//!   rank-one-perturbed multiplication operator case study.
//! - [`solver`]: companion linearization solver for the quadratic problem.
//! - [`enclosure`]: certified spectrum enclosures under coefficient errors.
//! - [`pseudospectrum`]: level sets of the least singular value of `M(z)`.
//! - [`perturbation`]: random coefficient perturbations, the Galerkin
//!   baseline, and the Monte Carlo experiment driver.

pub mod enclosure;
pub mod error;
pub mod linalg;
pub mod models;
pub mod pencil;
pub mod perturbation;
pub mod pseudospectrum;
pub mod solver;

pub use error::{Error, Result};
pub use models::{CaseStudyModel, DiagonalModel, OperatorModel, SpectrumDescription};
pub use pencil::{BasisSpec, QuadraticPencil};
pub use perturbation::{MonteCarloReport, PerturbationMode, PerturbationSpec};
pub use pseudospectrum::GridField;
pub use solver::RootSet;
