//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream (tensors, verification, geometry, bounds) computes
//! over these types; no floating point appears anywhere in a verification
//! path.

pub mod laurent;
pub mod multipoly;
pub mod rational;

pub use laurent::LaurentPoly;
pub use multipoly::{Monomial, MultiPoly};
pub use rational::{parse_rational, rat, ratio, Rational};
