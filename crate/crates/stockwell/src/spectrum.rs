//! DFT plumbing: forward/inverse transforms and band slicing.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * `bins[k] = (1/n) Σ_m samples[m] e^{-2πi k m / n}`: the forward DFT
//!   carries the 1/n so bins are the Fourier coefficients of the sampled
//!   1-periodic signal.
//! * `idft` is the plain unnormalized sum and inverts `dft` exactly.
//! * Inner products of signals are (1/n)-weighted: `(u, v) = (1/n) Σ u v̄`.
//!
//! Under this scaling the sampled exponentials e^{2πi k m / n} form an
//! orthonormal family, which is what makes the dyadic basis functions in
//! [`crate::dost`] exactly orthonormal on the grid.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::dyadic::{partition, Band};
use crate::error::{check_length, Error, Result};

/// Complex samples of one frame; length is a power of two >= 8.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<Complex64>,
}

impl Signal {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        check_length(samples.len())?;
        Ok(Self { samples })
    }

    pub fn from_real(samples: &[f64]) -> Result<Self> {
        Self::new(samples.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 8
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// (1/n)-weighted squared norm, the energy of one period.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.len() as f64
    }
}

/// DFT bins of one frame, same length as the signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    bins: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(bins: Vec<Complex64>) -> Result<Self> {
        check_length(bins.len())?;
        Ok(Self { bins })
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }

    pub fn bins_mut(&mut self) -> &mut [Complex64] {
        &mut self.bins
    }

    pub fn into_bins(self) -> Vec<Complex64> {
        self.bins
    }
}

/// Forward DFT with the 1/n normalization.
pub fn dft(s: &Signal) -> Spectrum {
    let n = s.len();
    let mut buf = s.samples().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for z in &mut buf {
        *z *= scale;
    }
    Spectrum { bins: buf }
}

/// Unnormalized inverse DFT; exact inverse of [`dft`].
pub fn idft(sp: &Spectrum) -> Signal {
    let mut buf = sp.bins().to_vec();
    FftPlanner::new().plan_fft_inverse(sp.len()).process(&mut buf);
    Signal { samples: buf }
}

/// Extract a band's bins in intra-band order: ascending from beta(p) for
/// positive bands, descending from n - beta(|p|) for negative bands (so
/// entry j always holds the frequency of magnitude beta + j), the single
/// bin for DC and Nyquist.
///
/// The band must be a slot of `partition(sp.len())`, offset included.
pub fn band_slice(sp: &Spectrum, band: &Band) -> Result<Vec<Complex64>> {
    let n = sp.len();
    let expected = *partition(n)?.band(band.p)?;
    if *band != expected {
        return Err(Error::InvalidBand { p: band.p, tau: 0, n });
    }
    Ok((0..band.width).map(|j| sp.bins()[band.bin(j, n)]).collect())
}
