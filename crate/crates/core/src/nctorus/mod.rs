//! The smooth noncommutative torus on finitely supported Fourier series.

pub mod complex;
pub mod element;
pub mod quadirr;
pub mod sl2;

use thiserror::Error;

pub use complex::{parse_decimal, ComplexStructure};
pub use element::{NcTorus, PhaseLaw, TorusElement, TorusTheta, TwoPiI};
pub use quadirr::{Canonical, QuadIrr};
pub use sl2::{tensor_degree_check, DegreeReport, SL2Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("pole: c*theta + d = 0 for {0}")]
    Pole(String),
}
