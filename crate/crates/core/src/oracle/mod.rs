//! Independent verification paths: finite-difference diagonalization of the
//! real partner Hamiltonians and direct shooting on the real Dirac system.

mod grid;
mod landau;
mod shooting;
mod tridiagonal;

pub use grid::{grid_eigenvalues, Boundary, GridSpec};
pub use landau::{landau_grid_levels, LandauGridLevel, LANDAU_GRID_SPACING};
pub use shooting::{dirac_shooting, dirac_shooting_with, shooting_secular, ShootingOptions};
pub use tridiagonal::SymmetricTridiagonal;
