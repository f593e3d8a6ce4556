//! Exact homology and cohomology of finite groups with coefficients in
//! finitely presented modules over `Z` and `Z[1/l]`.
//!
//! The algebra is generic over an exact integer [`Scalar`]; the aliases below
//! fix the common choices.

pub mod algebra;
pub mod complexes;
pub mod error;
pub mod gmodules;
pub mod group_homology;
pub mod groups;
pub mod harness;
pub mod linear_groups;
pub mod scalar;

pub use algebra::{Mat, ModuleMap, PresentedModule, RingSpec};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default machine scalar. Overflow is detected and reported.
pub type Int = i64;

pub type IntMat = Mat<Int>;
pub type IntModule = PresentedModule<Int>;
pub type IntMap = ModuleMap<Int>;

/// Arbitrary-precision scalar, the fallback on [`Error::Overflow`].
pub type Big = num_bigint::BigInt;

pub type BigMat = Mat<num_bigint::BigInt>;
pub type BigModule = PresentedModule<num_bigint::BigInt>;
pub type BigMap = ModuleMap<num_bigint::BigInt>;
