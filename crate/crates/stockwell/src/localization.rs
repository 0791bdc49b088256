//! Time localization of the dyadic basis functions.
//!
//! Basis function (p, tau) is nominally "at" time tau/beta; its natural
//! interval is the 1/beta-wide circular window centered there,
//! I = [tau/beta - 1/(2 beta), tau/beta + 1/(2 beta)), half-open on the
//! right. These reports measure how much of the function's unit energy
//! the interval actually captures. Within a band the answer is identical
//! for every tau (the functions are grid translates of each other), and
//! for moderately wide bands well over 85% of the norm concentrates.

use crate::dost::{synthesize_basis, BandIndex};
use crate::dyadic::partition;
use crate::error::{Error, Result};

/// Energy capture of one basis function in its nominal interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationReport {
    pub band: BandIndex,
    /// Interval start wrapped into [0, 1).
    pub lo: f64,
    /// lo + interval length; exceeds 1 when the interval wraps.
    pub hi: f64,
    /// (1/n) Σ over in-interval samples of |D|²; the total over all samples
    /// is 1, so inside and outside fractions sum to 1.
    pub energy_fraction: f64,
    /// sqrt of the energy fraction.
    pub norm_fraction: f64,
}

/// Concentration of basis function `b` on the n-point grid. The interval
/// width is 1/width of the band's slot (so width-1 slots, DC/fundamental/
/// Nyquist, cover the whole circle and report fraction 1). Needs at least
/// 8 samples per interval.
pub fn concentration(b: BandIndex, n: usize) -> Result<ConcentrationReport> {
    let layout = partition(n)?;
    let band = *layout.band(b.p).map_err(|_| Error::InvalidBand { p: b.p, tau: b.tau, n })?;
    if b.tau >= band.width {
        return Err(Error::InvalidBand { p: b.p, tau: b.tau, n });
    }
    let beta = band.width;
    if n < 8 * beta {
        return Err(Error::CoarseGrid { n, beta });
    }
    let d = synthesize_basis(b, n)?;
    // Sample m/n lies in [lo, lo + 1/beta) mod 1 iff the exact integer
    // residue below clears 2n; no floating-point membership fuzz.
    let (ni, bi, ti) = (n as i64, beta as i64, b.tau as i64);
    let modulus = 2 * ni * bi;
    let mut inside = 0.0;
    for (m, z) in d.samples().iter().enumerate() {
        let num = 2 * (m as i64) * bi - 2 * ni * ti + ni;
        if num.rem_euclid(modulus) < 2 * ni {
            inside += z.norm_sqr();
        }
    }
    let energy_fraction = inside / n as f64;
    let lo = ((2.0 * b.tau as f64 - 1.0) / (2.0 * beta as f64)).rem_euclid(1.0);
    Ok(ConcentrationReport {
        band: b,
        lo,
        hi: lo + 1.0 / beta as f64,
        energy_fraction,
        norm_fraction: energy_fraction.max(0.0).sqrt(),
    })
}

/// Reports for every slot of bands 2..=p_max. The widest band must still
/// fit the layout: 2 beta(p_max) <= n/2.
pub fn concentration_sweep(p_max: i32, n: usize) -> Result<Vec<ConcentrationReport>> {
    let layout = partition(n)?;
    if p_max < 2 || layout.band(p_max).is_err() {
        return Err(Error::InvalidBand { p: p_max, tau: 0, n });
    }
    let mut reports = Vec::new();
    for p in 2..=p_max {
        let width = layout.band(p)?.width;
        for tau in 0..width {
            reports.push(concentration(BandIndex::new(p, tau), n)?);
        }
    }
    Ok(reports)
}
