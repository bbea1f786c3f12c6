//! Exact-arithmetic models of first-order special relativity.
//!
//! Coordinates live in an exact ordered field ([`field`]), spacetime
//! primitives and the constructive cone axioms are in [`geometry`],
//! concrete observer models in [`worldview`], sampled axiom auditors in
//! [`axioms`], and the no-faster-than-light check with its proof replay in
//! [`noftl`].

pub mod axioms;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod noftl;
pub mod sampling;
pub mod worldview;

pub use error::{Error, Result};
pub use field::{FieldMode, Scalar};
