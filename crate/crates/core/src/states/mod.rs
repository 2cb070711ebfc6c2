//! Normalized bound states of step potentials in the pure electric case.

mod analysis;
mod state;

pub use analysis::{
    current_density, gram_matrix, inner_product, node_count, probability_density, pt_eigenvalue,
    pt_fit, residuals, spinor_overlap, to_real_spinor, tilde_from_real, DensityProfile,
    RealSpinor, Residuals, StateRow, PT_TOLERANCE,
};
pub use state::{
    assemble_square_well_state, assemble_state, fix_phase, partner_component, PiecewiseState,
    StateSample, CONJUGATE_TOLERANCE, GRID_POINTS, NULL_SPACE_THRESHOLD, TAIL_DECAY_LENGTHS,
};
