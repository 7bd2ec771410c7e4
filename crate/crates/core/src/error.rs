use std::fmt;

use thiserror::Error;

/// Integer lattice frequency `(k1, k2)`.
pub type LatticePoint = (i64, i64);

/// Identifies the `(n, m, k)` triple that tripped a numerical guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuardSite {
    pub n: u32,
    pub m: i32,
    pub k: Option<LatticePoint>,
}

impl fmt::Display for GuardSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some((k1, k2)) => write!(f, "(n={}, m={}, k=({}, {}))", self.n, self.m, k1, k2),
            None => write!(f, "(n={}, m={})", self.n, self.m),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Bessel order {order} (max {max})")]
    UnsupportedOrder { order: i64, max: u32 },

    #[error("root scan for order {order} exceeded {limit} without a sign change")]
    RootScan { order: i32, limit: f64 },

    #[error("{what} = {value} is outside the domain [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid {field}: {reason}")]
    InvalidInput { field: String, reason: String },

    #[error("aliasing guard: cutoff K={cutoff} must be below G/2 (G={grid})")]
    Aliasing { cutoff: u32, grid: usize },

    #[error("support violation: {fraction:.3e} of the energy lies outside radius {radius}")]
    Support { radius: f64, fraction: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("configuration mismatch: {0}")]
    Config(String),

    #[error("near-singular spectral weight at {site}: |pi^2|k|^2 - z^2| = {gap:.3e}")]
    NearSingular { site: GuardSite, gap: f64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {context}: {reason}")]
    Parse { context: String, reason: String },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(context: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            reason: reason.into(),
        }
    }

    /// True for errors raised by numerical guards rather than bad input.
    pub fn is_numerical_guard(&self) -> bool {
        matches!(
            self,
            Error::NearSingular { .. } | Error::RootScan { .. } | Error::Consistency(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
