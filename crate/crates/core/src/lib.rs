//! Degree of regularity of overdetermined, zero-dimensional, homogeneous
//! quadratic semi-regular systems, computed from the shape `(m, n)` alone.
//!
//! The Hilbert series of such a system is the truncation of
//! `(1 - z)^(m-n) (1 + z)^m` at its first non-positive coefficient, and
//! these coefficients are the values `K_k^(2m-n)(m-n)` of binary
//! Krawtchouk polynomials. The crate computes the degree of regularity
//! exactly ([`exact`]), cross-validates it through the smallest Krawtchouk
//! roots and the largest eigenvalues of a Golub-Kahan matrix ([`roots`]),
//! and evaluates four closed-form lower/upper bounds with certified
//! floors and ceilings ([`bounds`]).

pub mod bounds;
mod error;
pub mod exact;
pub mod interval;
pub mod krawtchouk;
pub mod roots;

pub use error::{Error, Result};
pub use exact::SystemShape;
