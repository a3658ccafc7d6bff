use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("parameter {value} outside domain [{lo}, {hi}] of {what}")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("degenerate normal frame: {condition} = {value:e} (null tangent direction)")]
    DegenerateFrame { condition: &'static str, value: f64 },

    #[error("degenerate metric: {condition} = {value:e}")]
    DegenerateMetric { condition: &'static str, value: f64 },

    #[error("profile slot pattern does not match family {family}")]
    PatternMismatch { family: &'static str },

    #[error("derivative evaluator disagrees with finite differences: {what} at {at} (rel err {rel:e})")]
    InconsistentDerivative { what: String, at: f64, rel: f64 },

    #[error("quadrature radicand {radicand:e} is negative (turning point or forbidden region)")]
    ImaginarySlope {
        radicand: f64,
        /// Modulus the printed expression would have with `sqrt(|radicand|)`.
        magnitude: f64,
    },

    #[error("slope expression has a vanishing denominator")]
    SingularSlope,

    #[error("no time-like unit-speed state exists for these chart angles (t-component radicand {0:e})")]
    NotTimelike(f64),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
