use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument is NaN")]
    NanArgument,

    #[error("argument {0} must be positive")]
    NonPositiveArgument(f64),

    #[error("value {0:e} overflows the representable range")]
    Overflow(f64),

    #[error("kappa must be nonzero")]
    ZeroKappa,

    #[error("operation requires kappa >= 1, got {0}")]
    NegativeKappa(i32),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("mass must be positive, got {0}")]
    InvalidMass(f64),

    #[error("energy {energy} is outside the domain of this operation ({expected})")]
    EnergyOutOfRange { energy: f64, expected: &'static str },

    #[error("radius {r} lies outside [{lo}, {hi}]")]
    RadiusOutOfRange { r: f64, lo: f64, hi: f64 },

    #[error("need at least {min} integration steps, got {got}")]
    TooFewSteps { got: usize, min: usize },

    #[error("non-finite value encountered at r = {r}")]
    NonFinite { r: f64 },

    #[error("radial component is identically zero")]
    VanishingComponent,

    #[error("could not resolve phase variation between {lo} and {hi}; refine the grid")]
    RefinementFailed { lo: f64, hi: f64 },

    #[error("threshold limit {value} is not on the pi/2 lattice (distance {distance:e})")]
    NonLatticeLimit { value: f64, distance: f64 },

    #[error("continuity limit {continuity} disagrees with jump-ledger limit {jumps}")]
    MethodDisagreement { continuity: f64, jumps: f64 },

    #[error("operation requires a single-segment square well")]
    NotSquareWell,

    #[error("bound-state scan found {found} roots but the winding count predicts {expected}; try a finer grid")]
    SpectrumMismatch { found: usize, expected: usize },

    #[error("invalid sweep range: {0}")]
    InvalidRange(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
