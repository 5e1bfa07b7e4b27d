use crate::phys::UnitKind;

/// Errors produced by the library.
///
/// The CLI maps these onto exit codes: parameter/usage problems → 2,
/// data/format problems → 3, numerical failures → 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unit mismatch: expected {expected}, got {found}")]
    UnitMismatch { expected: UnitKind, found: UnitKind },

    #[error("no spectral samples inside the band [{f_min:e} Hz, {f_max:e} Hz]")]
    EmptyBand { f_min: f64, f_max: f64 },

    #[error(
        "quadrature not converged: {nodes} vs {nodes_doubled} nodes/axis differ by {rel_diff:.3e} \
         relative (tolerance {tol:.0e}); raise nodes_per_axis (rule of thumb: > 4.5·beta + 64)"
    )]
    NonConvergence {
        nodes: usize,
        nodes_doubled: usize,
        rel_diff: f64,
        tol: f64,
    },

    #[error(
        "unstable step: dt·max(omega0, gamma) = {product:.4} exceeds {limit}; use dt <= {suggested:.4e} s"
    )]
    UnstableStep {
        product: f64,
        limit: f64,
        suggested: f64,
    },

    #[error(
        "trajectory too short: {samples} samples cannot supply {segments} half-overlapping \
         segments of at least {min_segment} samples"
    )]
    TooShort {
        samples: usize,
        segments: usize,
        min_segment: usize,
    },

    /// Malformed input data; carries the file and 1-based line number when known.
    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: u64,
        message: String,
    },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Wrap an I/O failure with a short description of what was being done.
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
