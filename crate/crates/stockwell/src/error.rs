use thiserror::Error;

/// Crate-wide error type. Every fallible operation returns one of these;
/// numerical results are never silently clamped or repaired.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Lengths must be powers of two and at least 8 so the dyadic layout
    /// has a DC band, a fundamental, at least one two-bin band, and Nyquist.
    #[error("length {0} is not a power of two >= 8")]
    InvalidLength(usize),

    /// The (p, tau) pair does not name a slot of the n-point layout.
    #[error("band (p = {p}, tau = {tau}) is not part of the {n}-point layout")]
    InvalidBand { p: i32, tau: usize, n: usize },

    /// Window coefficients are undefined on the DC band: its center
    /// frequency is 0 and the evaluation argument divides by it.
    #[error("window coefficients are undefined for the DC band (nu(0) = 0)")]
    DcBand,

    /// An admissible window must be nonzero on its support.
    #[error("window vanishes on its support at xi = {xi}")]
    ZeroOnSupport { xi: f64 },

    /// Window evaluation produced NaN or infinity.
    #[error("window value is not finite at xi = {xi}")]
    NonFinite { xi: f64 },

    /// The intra-band offset exceeds the band width.
    #[error("offset j = {j} is outside band p = {p} (width {width})")]
    BandOffset { p: i32, j: usize, width: usize },

    /// A tabulated window or window spec string failed structural checks.
    #[error("invalid window: {0}")]
    InvalidWindow(String),

    /// A window table file could not be read.
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    /// Quadrature and validation grids must resolve the support.
    #[error("grid of {0} points is too coarse (need at least {1})")]
    GridTooCoarse(usize, usize),

    /// A Rayleigh quotient escaped the theoretical frame bounds.
    #[error("frame bound violation: quotient {q} outside [{lower}, {upper}]")]
    FrameViolation { q: f64, lower: f64, upper: f64 },

    /// Coefficients were built against a different layout than expected.
    #[error("coefficient layout mismatch: expected length {expected}, got {got}")]
    LayoutMismatch { expected: usize, got: usize },

    /// The sample grid cannot resolve the localization interval.
    #[error("{n} samples cannot resolve a 1/{beta} interval (need n >= {})", 8 * beta)]
    CoarseGrid { n: usize, beta: usize },

    /// A frequency bin index fell outside the grid.
    #[error("frequency bin {k} is outside 0..{n}")]
    BinRange { k: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shared length gate: n must be a power of two with n >= 8.
/// Returns log2(n) on success.
pub(crate) fn check_length(n: usize) -> Result<u32> {
    if n >= 8 && n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::InvalidLength(n))
    }
}
