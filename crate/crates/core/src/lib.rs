//! Conformal Yamabe constants of product manifolds.
//!
//! The crate has two halves that check each other:
//!
//! * [`invariants`] — exact and high-precision closed forms: conformal and
//!   critical exponents, sphere volumes and Yamabe constants, the product
//!   lower bound and its defect factor, surgery constants, and the stable
//!   invariant with its `(πe/2)^v` asymptotics.
//! * [`discrete`], [`functional`], [`minimize`] — weighted graph
//!   discretizations of compact manifolds, the Yamabe quotient and the
//!   inequality checkers behind the product bound, and a constrained
//!   descent estimator for the Yamabe constant, assembled into bound
//!   sandwiches against the closed forms.

pub mod discrete;
pub mod error;
pub mod functional;
pub mod gamma;
pub mod invariants;
pub mod minimize;

pub use error::{Error, Result};
