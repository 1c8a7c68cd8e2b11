//! Exact symbolic computation in the Neveu–Schwarz superalgebra, its
//! contact subalgebra and the tensor-density modules Γ(λ, b).

pub mod algebra;
pub mod analysis;
pub mod enveloping;
pub mod error;
pub mod gamma;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
