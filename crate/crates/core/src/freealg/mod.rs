//! Involutive free algebras over exact cyclotomic-phase scalars.

pub mod chern;
pub mod cyclo;
pub mod element;
pub mod matrix;
pub mod rewrite;
pub mod scalar;
pub mod tensor;

pub use chern::{chern_even, chern_odd};
pub use cyclo::{cyclo_rank, row_echelon, CycloNum};
pub use element::{deglex, FreeElement, GeneratorTable, Word};
pub use matrix::AlgMatrix;
pub use rewrite::{CriticalPair, RewriteError, RewriteSystem};
pub use scalar::{Phase, UniScalar};
pub use tensor::{tensor_is_zero, TensorElement};
