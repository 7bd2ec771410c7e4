//! Fourier-Bessel analysis, synthesis and zero-padded convolution for
//! functions supported on disks.
//!
//! The radial spectrum comes from the zeros of `J_m` (zero-value boundary
//! condition) or of `J_m'` (derivative boundary condition). Coefficients can
//! be computed by polar quadrature ([`spectra::analyze_direct`]) or from
//! square-window Fourier coefficients through closed-form spectral weights
//! ([`spectra::analyze_spectral`]); the same weights turn products of
//! windowed transforms into coefficients of zero-padded convolutions.

pub mod basis;
pub mod bessel;
pub mod cli;
pub mod convolution;
pub mod error;
pub mod io;
pub mod quadrature;
pub mod sampling;
pub mod spectra;

pub use basis::{Basis, BasisSpec};
pub use bessel::{BoundaryCondition, ZeroTable};
pub use error::{Error, Result};
pub use sampling::{DiskFunction, FourierTable, Raster};
pub use spectra::{CoefficientMatrix, LatticeShells};
