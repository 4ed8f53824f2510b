//! Exact-arithmetic library for border rank algorithms of small matrix
//! multiplication tensors: catalog, verification, Segre geometry, Strassen
//! bounds, gluing, and symmetry analysis.

pub mod error;
pub mod exact;
pub mod block_intersect;
pub mod bounds;
pub mod catalog;
pub mod geometry;
pub mod linalg;
pub mod rng;
pub mod subspace;
pub mod symmetry;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
