//! The two-sphere, the θ-deformed four-sphere and the Λ-deformed
//! three-spheres, with characteristic-variety sampling for the latter.

pub mod charvar;
pub mod s2;
pub mod s3;
pub mod s4;

use thiserror::Error;

use crate::freealg::RewriteError;

pub use charvar::{find_points, sigma_orbit, BilinearSystem, CharPoint, OrbitReport};
pub use s3::{
    hermitian_form_matches, spans_equal,
    ch12, ch12_closed_form, ch32_tensor, hermitian_relations, multilinearize, r4_relations,
    s3_relations, unitarity_expansion, unitary_matrix, EpsilonSign, LambdaMat, PhiParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SphereError {
    #[error("invalid Lambda: {0}")]
    Lambda(String),
    #[error("invalid phi: {0}")]
    Phi(String),
    #[error("not homogeneous of degree 2: {0}")]
    Inhomogeneous(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}
