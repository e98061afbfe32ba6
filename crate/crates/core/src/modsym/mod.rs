//! Modular symbols for `Gamma0(M)`: Manin presentation, Hecke operators,
//! boundary map, and old/new decomposition at level `N^2`.

pub mod boundary;
pub mod cusps;
pub mod degeneracy;
pub mod heilbronn;
pub mod p1;
pub mod relations;
pub mod space;

pub use boundary::BoundaryMap;
pub use cusps::{cusp_class, label_of, Cusp, CuspLabel};
pub use space::{HeckeMatrix, HeckeOp, ManinSymbolSpace, Sign};
