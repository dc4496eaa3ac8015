//! Exact arithmetic and symbolic dynamics for Hurwitz continued fractions
//! over the Gaussian integers.
//!
//! The crate provides:
//!
//! - exact Gaussian-integer and real-quadratic-field scalars
//!   ([`gaussian`], [`quad`]);
//! - exact plane geometry for the cylinder/prototype machinery
//!   ([`geometry`]);
//! - the finite-word taxonomy and the 13-vertex sofic transition graph
//!   ([`shift`]);
//! - digit expansion, convergents and certified evaluation ([`engine`]);
//! - the irregular-to-regular rewriting algorithm ([`regularize`]);
//! - word combinatorics for the transcendence constructions ([`wordlab`]);
//! - empirical digit-frequency statistics ([`stats`]).

pub mod engine;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod quad;
pub mod regularize;
pub mod shift;
pub mod stats;
pub mod wordlab;

pub use error::{Error, Result};
pub use gaussian::{in_fundamental_domain, nearest_gaussian, GaussianInt, Symmetry};
pub use quad::{QuadComplex, QuadScalar};
