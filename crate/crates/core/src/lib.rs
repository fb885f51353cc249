//! Exact and certified computations on noncommutative tori and
//! noncommutative spherical manifolds.
//!
//! The crate is organised by subsystem:
//!
//! * [`freealg`]: involutive free algebras over an exact cyclotomic scalar
//!   ring, string rewriting, tensor elements and Chern characters.
//! * [`nctorus`]: the smooth noncommutative torus as finitely supported
//!   Fourier series, its trace and derivations, K₀ ranks and the SL₂(ℤ)
//!   action on the deformation parameter.
//! * [`heisenberg`]: basic modules realised on exact polynomial-Gaussian
//!   packets, with both module actions and the holomorphic structures.
//! * [`thetaring`]: certified theta constants, structure constants of
//!   holomorphic sections and the graded coordinate rings they define.
//! * [`spheres`]: the two-sphere, the θ-deformed four-sphere and the
//!   Λ-deformed three-spheres, including characteristic-variety sampling.
//! * [`suite`]: the verification suite driven by the command-line tool.

pub mod freealg;
pub mod heisenberg;
pub mod linalg;
pub mod nctorus;
pub mod precision;
pub mod quadfield;
pub mod spheres;
pub mod suite;
pub mod thetaring;

pub use freealg::{
    AlgMatrix, FreeElement, GeneratorTable, RewriteSystem, TensorElement, UniScalar,
};
pub use nctorus::{ComplexStructure, QuadIrr, SL2Mat, TorusElement};
pub use precision::Precision;
