//! Series, `SL₂` matrices over series, character jets at the trivial
//! character, their low-order obstructions, the parabolic deformation and the
//! two-generator lifting.

mod character;
mod lift;
mod matrix_identities;
mod obstruction;
pub mod series;

pub use character::{
    character_jet_from_rep, extract_bilinear, verify_jet_equation, CharacterJet, JetCheck, JetCoefficient, Sl2,
};
pub use lift::{
    lift_auto, lift_two_generator_character, solve_trace_system, Lift, LiftBranch, LiftOutcome, LiftResiduals,
    TraceTriple,
};
pub use matrix_identities::{check_matrix_identities, MatrixIdentity, MatrixIdentityReport};
pub use obstruction::{
    build_parabolic_deformation, factor_quadratic_form, obstruction_report, LinearFactorization, ObstructionReport,
    ObstructionSemantics,
};
pub use series::{Series, INFINITE_PRECISION};

use crate::scalar::ScalarMode;
use crate::{Complex64, Gaussian, Rational};

pub type RationalSeries = Series<Rational>;
pub type GaussianSeries = Series<Gaussian>;
pub type ComplexSeries = Series<Complex64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("cannot invert the zero series")]
    ZeroInversion,
    #[error("operation needs a finite truncation order")]
    InfinitePrecision,
    #[error("ODD_SQUARE_CLASS: odd valuation, the series is t times a square")]
    OddSquareClass,
    #[error("leading coefficient is not a square in {mode} mode; retry in a larger scalar mode")]
    NonSquareLeading { mode: ScalarMode },
    #[error("the construction needs i, which {mode} mode does not contain")]
    NeedsImaginaryUnit { mode: ScalarMode },
    #[error("DEGENERATE: x² + y² + z² − xyz − 4 vanishes to the requested order")]
    Degenerate,
    #[error("unsupported reducible configuration: {0}")]
    UnsupportedReducible(String),
    #[error("input is not a character jet: {0}")]
    Consistency(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quadratic form has rank {0}, more than 2")]
    RankTooLarge(usize),
    #[error("requested order {requested} exceeds the jet order {available}")]
    OrderTooLarge { requested: usize, available: usize },
}
