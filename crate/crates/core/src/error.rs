use thiserror::Error;

/// Which admissibility condition failed for a `(k, epsilon)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandCondition {
    /// `k^2 - epsilon^2 <= 0`: no exterior decay.
    ExteriorDecay,
    /// `(epsilon + v0)^2 - k^2 <= 0`: no interior oscillation.
    InteriorOscillation,
}

impl std::fmt::Display for BandCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BandCondition::ExteriorDecay => write!(f, "k^2 - eps^2 > 0"),
            BandCondition::InteriorOscillation => write!(f, "(eps + v0)^2 - k^2 > 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("potential is singular at x = {x}")]
    SingularPoint { x: f64 },
    #[error("x = {x} is a discontinuity of the potential")]
    DiscontinuityPoint { x: f64 },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("invalid field configuration: {0}")]
    InvalidField(String),
    #[error("proportional regime with alpha = {alpha} is not supported (need |alpha| < 1)")]
    UnsupportedRegime { alpha: f64 },
    #[error("(k, eps) outside the admissible band: {0} fails")]
    OutsideAdmissibleBand(BandCondition),
    #[error("outer region {side} is not evanescent; scattering states are not bound states")]
    UnboundedStateRequest { side: &'static str },
    #[error("eps is not an eigenvalue (smallest/largest singular value = {ratio:e})")]
    NotAnEigenvalue { ratio: f64 },
    #[error("null space of the matching system has dimension {dimension}")]
    DegenerateRoot { dimension: usize },
    #[error("partner component undefined for k = 0")]
    DegenerateMomentum,
    #[error("second component is not proportional to the conjugate of the first (mismatch {mismatch:e})")]
    NotConjugatePair { mismatch: f64 },
    #[error("state is not a PT eigenfunction (residual {residual:e})")]
    BrokenPTSymmetry { residual: f64 },
    #[error("states have different momenta k = {a} and k = {b}")]
    MismatchedMomentum { a: f64, b: f64 },
    #[error("invalid level index {0}")]
    InvalidLevel(i64),
    #[error("grid too coarse: halving the spacing moved eigenvalue {index} by {shift:e}")]
    GridTooCoarse { index: usize, shift: f64 },
    #[error("exterior at the {side} end has no decaying direction")]
    NonDecayingExterior { side: &'static str },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
