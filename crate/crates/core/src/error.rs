use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("index ({i}, {j}) out of range for {kind:?} nodes")]
    IndexOutOfRange {
        kind: crate::grid::NodeKind,
        i: isize,
        j: isize,
    },

    #[error("halo width {have} is smaller than the {need} layers this operation reads")]
    InsufficientHalo { have: usize, need: usize },

    #[error("Dirichlet ghost filling requires an exact solution")]
    MissingExactSolution,

    #[error("invalid scheme configuration: {0}")]
    InvalidScheme(String),

    #[error("incompatible Poisson source: net source {mean:e} against norm {norm:e}")]
    IncompatibleSource { mean: f64, norm: f64 },

    #[error("periodic pressure solver requires a constant reference density")]
    VariableDensity,

    #[error("blow-up at t = {time}: {reason}")]
    BlowUp { time: f64, reason: BlowUpReason },

    #[error("reference state has nonpositive temperature {temperature} K at z = {z} m")]
    NonPositiveTemperature { z: f64, temperature: f64 },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("resolution {coarse} does not divide reference resolution {fine} with odd ratio")]
    NonDivisibleResolution { coarse: usize, fine: usize },

    #[error("case {0} does not provide {1}")]
    Unsupported(String, &'static str),

    #[error("config error: {0}")]
    Config(String),

    #[error("dump format error at line {line}: {msg}")]
    Dump { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What stopped an integration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowUpReason {
    NonFinite,
    /// The CFL step no longer changes `t` in floating point.
    StepUnderflow,
}

impl std::fmt::Display for BlowUpReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BlowUpReason::NonFinite => "non-finite values",
            BlowUpReason::StepUnderflow => "time step below the resolution of t",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
