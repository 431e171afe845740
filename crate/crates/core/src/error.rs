//! Error type shared by all numeric modules.

use alloc::string::String;
use core::fmt;

/// Failure modes of the numeric kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid length is not a power of two (or is below the minimum size).
    BadGridLength { len: usize },
    /// An input contained NaN or infinity.
    NonFinite { what: &'static str },
    /// A parameter was outside its admissible range.
    InvalidParam { what: &'static str, detail: String },
    /// `stationary_point` called with a slope below the range of Φ'.
    NoStationaryPoint { slope: f64 },
    /// Oscillatory quadrature exceeded its panel budget before converging.
    PanelBudget { panels_needed: usize, budget: usize },
    /// A phase magnitude exceeded what the selected precision can reduce
    /// mod 2π with acceptable error.
    PhasePrecision { magnitude: f64, budget: f64 },
    /// A weighted-norm tail failed to decay over the last decades probed.
    DivergentTail { last_decade_ratio: f64 },
    /// The spatial grid cannot resolve the requested frequency band.
    NyquistViolation { band_edge: f64, grid_max: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadGridLength { len } => {
                write!(f, "grid length {len} is not a power of two >= 8")
            }
            Error::NonFinite { what } => write!(f, "non-finite value in {what}"),
            Error::InvalidParam { what, detail } => {
                write!(f, "invalid parameter {what}: {detail}")
            }
            Error::NoStationaryPoint { slope } => write!(
                f,
                "slope {slope} is below the range of the group velocity; no stationary point"
            ),
            Error::PanelBudget { panels_needed, budget } => write!(
                f,
                "oscillatory quadrature needs ~{panels_needed} panels, budget is {budget}"
            ),
            Error::PhasePrecision { magnitude, budget } => write!(
                f,
                "phase magnitude {magnitude:.3e} exceeds the precision budget {budget:.3e}"
            ),
            Error::DivergentTail { last_decade_ratio } => write!(
                f,
                "weighted tail not decaying: last-decade mass ratio {last_decade_ratio:.3e}"
            ),
            Error::NyquistViolation { band_edge, grid_max } => write!(
                f,
                "band edge {band_edge} exceeds the grid's maximal frequency {grid_max}"
            ),
        }
    }
}

impl core::error::Error for Error {}
