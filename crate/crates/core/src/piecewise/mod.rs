//! Pure electric case for piecewise-constant potentials.
//!
//! In each region the upper component `psi1` of the rotated spinor solves
//! `psi1'' = (k^2 - (eps - V)^2) psi1`. At a step of height `J` it is
//! continuous while its derivative jumps by `i J psi1`.

mod matching;
mod region;
mod secular;

pub use matching::{assemble_match_system, MatchSystem};
pub use region::{RegionKind, RegionSolution};
pub use secular::{
    region_wavenumbers, secular_det_general, secular_det_square_well, SecularFunction,
};

