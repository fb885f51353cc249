//! Theta constants, structure constants of holomorphic sections and the
//! graded coordinate rings B_g(θ, τ) = ⊕ ℋ_{gⁿ}.

pub mod ring;
pub mod structure;
pub mod theta;

use thiserror::Error;

pub use ring::{
    classify_poli2, Defect, GradedRing, Poli2Class, Presentation, PresentationParams,
    QuadraticKernel, RelationTerm,
};
pub use structure::{crt, index_class, index_set, struct_constants, StructTensor};
pub use theta::{tail_bound, tau_eff_from, theta_const, PrecisionBudget, ThetaChar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("divergent nome: |q| >= 1")]
    DivergentNome,
    #[error("nonpositive degree: {0}")]
    NonPositiveDegree(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("classifier outside the theorem's hypotheses: {0}")]
    Outside(String),
    #[error("{0}")]
    Domain(String),
}
