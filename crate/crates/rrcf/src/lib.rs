//! High-precision computation, algebraic recognition, and numeric
//! certification for the Rogers-Ramanujan continued fraction and the
//! modular quantities surrounding it.
//!
//! The crate is organized as:
//!
//! - [`qseries`]: the series/product kernels — f(-q), theta2, theta3,
//!   and R(q) by Rogers' product and by backward recurrence;
//! - [`invariants`]: the modular layer — lambda*, lambda, Klein's J,
//!   Ramanujan's G and g class invariants, their interconversions, and
//!   a catalog of closed forms evaluated as radical trees;
//! - [`recognition`]: turning high-precision reals back into exact
//!   algebra — minimal polynomials via exact lattice reduction and
//!   coefficient recovery over square-root bases;
//! - [`verify`]: the certification engine — every identity is checked
//!   at two precision levels and the residual shrinkage decides the
//!   verdict — plus the end-to-end reproduction pipelines.
//!
//! All operations are pure functions of (input, context) and safe to run
//! concurrently.

pub mod catalog;
pub mod error;
pub mod invariants;
pub mod poly;
pub mod precision;
pub mod qseries;
pub mod radical;
pub mod real;
pub mod recognition;
pub mod surd;
pub mod verify;

mod lll;

pub use error::{Error, Result};
pub use precision::PrecisionCtx;
pub use real::Real;
pub use surd::SurdArg;
