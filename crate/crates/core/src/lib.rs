//! Exact algebra for translation-invariant stabilizer codes.
//!
//! Codes are linking formations over the Laurent ring `Z[x_1^±, ..., x_d^±]`.
//! Modules are square cokernel presentations, forms are rational Gram matrices
//! on representatives, and finite-size questions go through compactification
//! on the `ℓ`-torus.

pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod formations;
pub mod forms;
pub mod intlin;
pub mod majorana;
pub mod modules;
pub mod ring;
pub mod torus;
pub mod weyl;
pub mod witt;

pub use error::{Error, Result};
