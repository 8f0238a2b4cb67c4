use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability mass {mass:e} outside the {dim}-level basis exceeds tolerance {tol:e}")]
    TruncationOverflow { mass: f64, tol: f64, dim: usize },

    #[error("moment order ({p}, {q}) exceeds the supported maximum {max}")]
    OrderTooLarge { p: u32, q: u32, max: u32 },

    #[error("normally ordered moment of order {0} was not supplied")]
    MissingMoment(u32),

    #[error("heralding probability {0:e} is too small to condition on")]
    ZeroProbability(f64),

    #[error("witness undefined: denominator {0:e} below threshold")]
    UndefinedWitness(f64),

    #[error("outside the closed-form domain: {0}")]
    DomainError(&'static str),

    #[error("degenerate beam-splitter geometry: {0}")]
    DegenerateGeometry(&'static str),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("joint dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid state: {0}")]
    InvalidState(&'static str),
}

/// Checks that `value` lies in the closed interval `[lo, hi]`.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: if value.is_finite() {
                "out of range"
            } else {
                "not finite"
            },
        })
    }
}
