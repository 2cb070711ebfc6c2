//! Bound states of massless two-dimensional Dirac fermions in fields that
//! depend on one coordinate only.

pub mod closed_form;
pub mod error;
pub mod model;
pub mod oracle;
pub mod piecewise;
pub mod quadrature;
pub mod potential;
pub mod spectrum;
pub mod states;
pub mod units;
pub mod verify;

pub use error::{BandCondition, Error, Result};
pub use model::{CaseClass, FieldConfig, ProportionalRegime, QuantumLabel};
pub use potential::Potential1D;
