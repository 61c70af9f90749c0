//! Exact-arithmetic workbench for left-invariant complex geometry.
//!
//! The crate computes with the finite-dimensional exterior algebra of
//! left-invariant forms on a Lie algebra with complex structure: it validates
//! structure equations, runs the contraction / Lie-derivative calculus of
//! tangent-valued (0,q)-forms, decides existence of holomorphic p-contact
//! structures, computes invariant Dolbeault / de Rham / Frölicher data, and
//! certifies order-two unobstructedness of p-contact deformations. All
//! arithmetic is over ℚ(i); every answer is exact and deterministic.
//!
//! Outputs are invariant-complex quantities. Agreement with manifold-level
//! cohomology holds where the relevant comparison theorems apply (e.g.
//! 3-dimensional complex nilmanifolds) and is the caller's responsibility
//! elsewhere; reports are therefore marked "invariant-level" throughout.

pub mod scalars;
pub mod linalg;
pub mod exterior;
pub mod invariant;
pub mod catalog;
pub mod polyforms;
pub mod contact;
pub mod cohomology;
pub mod deformations;

pub use scalars::{GaussianRational, Gq, Rational};
