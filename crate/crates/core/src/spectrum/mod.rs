//! Bound-state spectra: root finding on secular functions, parameter sweeps
//! with branch tracking, and closed-form Landau levels.

mod band;
mod landau;
mod roots;
mod sweep;

pub use band::{admissible_interval, AdmissibleBand};
pub use landau::{landau_levels_magnetic, landau_levels_proportional};
pub use roots::{
    count_bound_states, find_roots, square_well_spectrum, BOUNDARY_MARGIN, DEFAULT_SCAN_POINTS,
    DEFAULT_TOLERANCE,
};
pub use sweep::{
    cut, sweep_k, sweep_v0, BandBoundary, SpectrumBranch, SweepParameter, SweepRange,
    SweepSettings, Termination, COLLAPSE_TOLERANCE,
};
