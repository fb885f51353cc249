//! Basic modules E_{d,c}(θ) realised on exact polynomial-Gaussian packets.
//!
//! Coefficients live in ℚ(√D, i)[T] with T standing for 2πi, so translations,
//! modulations and derivatives act exactly and module identities are literal
//! equalities of packets.

pub mod module;
pub mod packet;
pub mod tpoly;

use thiserror::Error;

pub use module::{
    act_left_u, act_left_v, act_right, act_right_monomial, act_right_u, act_right_u_inv,
    act_right_v, act_right_v_inv, apply_scalar, displayed_basis, holomorphic_basis,
    leibniz_defect, nabla_z, predicted_defect, ModuleParams, NablaConvention,
};
pub use packet::{decay_sign, Exponent, Packet};
pub use tpoly::{TPoly, XPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("class count mismatch: expected {expected}, got {got}")]
    ClassMismatch { expected: usize, got: usize },
    #[error("packet term does not decay (Re kappa >= 0)")]
    NonDecaying,
    #[error("complex structure tau required")]
    MissingTau,
    #[error("{0}")]
    Domain(String),
}
