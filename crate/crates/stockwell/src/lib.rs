//! Orthonormal Stockwell analysis on dyadic frequency bands.
//!
//! The crate is organized around one fixed geometry and two transforms:
//!
//! * [`dyadic`]: octave bands on the DFT frequency axis and the canonical
//!   coefficient layout;
//! * [`spectrum`]: DFT conventions (1/n-normalized forward, unnormalized
//!   inverse) and band slicing;
//! * [`dost`]: the orthonormal dyadic basis, its O(n log n) analysis and
//!   synthesis, and an O(n²) inner-product oracle;
//! * [`windows`]: admissible frequency windows, their in-band coefficients,
//!   the spectral multiplier they induce, and frame-bound estimates;
//! * [`adapted`]: window-adapted Riesz bases: analysis/synthesis through
//!   the multiplier, band norms, frame diagnostics, dual-frame analysis;
//! * [`stransform`]: the fully redundant time-frequency transform, kept
//!   O(n² log n) on purpose as the reference the fast paths are tested
//!   against;
//! * [`localization`]: how much of each basis function's energy sits in
//!   its nominal time interval.
//!
//! Signals are complex, length a power of two (at least 8), with the
//! (1/n)-weighted inner product throughout.

pub mod adapted;
pub mod dost;
pub mod dyadic;
mod error;
pub mod localization;
pub mod spectrum;
pub mod stransform;
pub mod windows;

pub use adapted::{AdaptedCoefficients, BandNorms, FrameReport};
pub use dost::{BandIndex, DostCoefficients};
pub use dyadic::{Band, BandPartition};
pub use error::{Error, Result};
pub use localization::ConcentrationReport;
pub use spectrum::{Signal, Spectrum};
pub use stransform::TimeFreqMatrix;
pub use windows::{FrameBounds, Window, WindowKind};
