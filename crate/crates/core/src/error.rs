use std::fmt;

use thiserror::Error;

/// Default absolute tolerance for boundary decisions (purity constraints,
/// bounds on Delta, physicality slack, classifier ties).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative scale below which a negative radicand is treated as rounding noise.
pub(crate) const RADICAND_SLACK: f64 = 1e-12;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unphysical state: {0}")]
    Unphysical(#[from] PhysicalityViolation),

    #[error("unphysical parameters: {0}")]
    UnphysicalParameters(String),

    #[error("outside the admissible region: {0}")]
    OutOfRegion(#[from] RegionViolation),

    #[error(
        "closed-form least-entangled state requires the uncertainty bound to be the active upper \
         bound on delta (heisenberg {heisenberg:.12}, other branch {other:.12})"
    )]
    InactiveBranch { heisenberg: f64, other: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

/// First failed check when testing a covariance matrix for physicality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhysicalityViolation {
    NotFinite,
    NotSymmetric { row: usize, col: usize, asymmetry: f64 },
    NotPositiveDefinite { order: usize, minor: f64 },
    NonPositiveDeterminant { det: f64 },
    Uncertainty { n_minus: f64 },
}

impl fmt::Display for PhysicalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NotFinite => write!(f, "matrix has non-finite entries"),
            Self::NotSymmetric { row, col, asymmetry } => {
                write!(f, "matrix not symmetric at ({row}, {col}), |a_ij - a_ji| = {asymmetry:e}")
            }
            Self::NotPositiveDefinite { order, minor } => {
                write!(f, "leading principal minor of order {order} is {minor:e}, not positive")
            }
            Self::NonPositiveDeterminant { det } => {
                write!(f, "determinant {det:e} is not positive")
            }
            Self::Uncertainty { n_minus } => {
                write!(f, "smallest symplectic eigenvalue {n_minus:.12} violates n_minus >= 1/2")
            }
        }
    }
}

impl std::error::Error for PhysicalityViolation {}

/// Which constraint on purities or on Delta was violated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionViolation {
    PurityRange {
        name: &'static str,
        value: f64,
    },
    /// `mu >= mu1 * mu2` fails (a less-pure-than-product state).
    BelowProduct {
        mu: f64,
        bound: f64,
    },
    /// `mu <= mu1 mu2 / (mu1 mu2 + |mu1 - mu2|)` fails.
    AboveMarginalBound {
        mu: f64,
        bound: f64,
    },
    DeltaBelowMin {
        delta: f64,
        min: f64,
    },
    DeltaAboveMax {
        delta: f64,
        max: f64,
    },
}

impl fmt::Display for RegionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::PurityRange { name, value } => {
                write!(f, "purity {name} = {value} is not in (0, 1]")
            }
            Self::BelowProduct { mu, bound } => write!(
                f,
                "global purity {mu} violates mu >= mu1*mu2 = {bound} (no state is less pure than the product of its marginals)"
            ),
            Self::AboveMarginalBound { mu, bound } => write!(
                f,
                "global purity {mu} violates mu <= mu1*mu2/(mu1*mu2 + |mu1-mu2|) = {bound}"
            ),
            Self::DeltaBelowMin { delta, min } => {
                write!(f, "delta {delta} is below the lower bound {min}")
            }
            Self::DeltaAboveMax { delta, max } => {
                write!(f, "delta {delta} is above the upper bound {max}")
            }
        }
    }
}

impl std::error::Error for RegionViolation {}

/// Square root of a radicand that may sit slightly below zero from rounding.
///
/// Values in `[-RADICAND_SLACK * scale, 0)` are clamped to zero; anything more
/// negative is returned as `None`.
pub(crate) fn clamped_sqrt(radicand: f64, scale: f64) -> Option<f64> {
    if radicand >= 0.0 {
        Some(radicand.sqrt())
    } else if radicand >= -RADICAND_SLACK * scale.abs().max(1.0) {
        Some(0.0)
    } else {
        None
    }
}
