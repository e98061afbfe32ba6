//! Eisenstein congruences for weight-2 cusp forms on `Gamma0(N^2)` and the
//! class field consequences for `Q(N^(1/p))`.

pub mod arith;
pub mod cache;
pub mod classfield;
pub mod congruence;
pub mod eisenstein;
pub mod error;
pub mod gamma0;
pub mod linalg;
pub mod modsym;
pub mod pipeline;

pub use error::{Error, Result};
