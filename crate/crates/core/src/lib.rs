//! Binary discrimination of thermal and identity channels on truncated Fock
//! spaces.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`fock`]: kets and density operators over truncated single- and
//!   two-mode Fock bases (thermal, coherent, N00N, SPDC, qudit states) and the
//!   linear algebra on them: tensor products, partial traces, fractional
//!   matrix powers and trace norms.
//! - [`channels`]: the hypothesis pairs `(rho0, rho1)` produced by the
//!   depolarizing-vs-identity and thermal-vs-identity channel models.
//! - [`oracle`]: brute-force numerical evaluation of the Helstrom error, the
//!   quantum Chernoff bound and the Bhattacharyya-derived lower bound.
//! - [`closed_forms`]: analytic expressions for the same quantities, evaluated
//!   in log space so that many-copy values never underflow.
//! - [`curves`]: labelled series of bounds versus copy number or signal
//!   strength, shared by the CLI and the browser demo.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod closed_forms;
pub mod curves;
mod error;
pub mod fock;
mod noise;
pub mod oracle;
mod prob;
pub mod tolerance;

pub use error::{Error, Result};
pub use noise::NoiseSpec;
pub use prob::Probability;
