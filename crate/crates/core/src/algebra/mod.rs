//! Exact linear algebra over `Z` and `Z[1/l]`.

pub mod functors;
pub mod lattice;
pub mod mat;
pub mod module;
pub mod ring;
pub mod snf;

pub use mat::{Mat, SparseMat, DEFAULT_CELL_BUDGET};
pub use module::{cokernel, ModuleMap, PresentedModule};
pub use ring::RingSpec;
pub use snf::{kernel, snf, solve, SmithDecomposition};
