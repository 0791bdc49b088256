//! The orthonormal dyadic basis and its O(n log n) analysis/synthesis.
//!
//! Band (p, tau) with |p| >= 2 has the basis function
//!
//! ```text
//! D_{p,tau}(t) = (1/sqrt(beta)) Σ_{j=0}^{beta-1} e^{2πi(beta+j)t} e^{-2πi j tau / beta}
//! ```
//!
//! with beta = beta(|p|); negative bands are the conjugates, D_0 = 1,
//! D_{1,0} = e^{2πit}, and the Nyquist singleton is e^{2πi(n/2)t}. Sampled
//! at t = m/n these are exactly orthonormal in the (1/n)-weighted inner
//! product, because each band draws on a disjoint set of DFT bins.
//!
//! Analysis reduces per band to a length-beta DFT of the band's bins, so a
//! full transform costs one length-n FFT plus one small FFT per band.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

use crate::dyadic::{beta, partition, BandPartition};
use crate::error::{Error, Result};
use crate::spectrum::{band_slice, dft, idft, Signal, Spectrum};

/// Names one coefficient slot: band ordinal and position within the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandIndex {
    pub p: i32,
    pub tau: usize,
}

impl BandIndex {
    pub fn new(p: i32, tau: usize) -> Self {
        Self { p, tau }
    }
}

/// Analysis coefficients in the canonical flat layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DostCoefficients {
    layout: BandPartition,
    values: Vec<Complex64>,
}

impl DostCoefficients {
    pub fn new(layout: BandPartition, values: Vec<Complex64>) -> Result<Self> {
        if layout.n() != values.len() {
            return Err(Error::LayoutMismatch { expected: layout.n(), got: values.len() });
        }
        Ok(Self { layout, values })
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn layout(&self) -> &BandPartition {
        &self.layout
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, b: BandIndex) -> Result<Complex64> {
        Ok(self.values[self.layout.flat_index(b.p, b.tau)?])
    }

    /// Sum of squared magnitudes; equals the signal energy (Parseval).
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Samples of (1/sqrt(beta)) Σ_j weights[j] e^{2πi(beta+j)(t - tau/beta)}
/// on the n-point grid. The dyadic basis uses unit weights; the adapted
/// basis passes inverse window coefficients. Callers conjugate for
/// negative bands.
pub(crate) fn weighted_band_samples(
    weights: &[Complex64],
    beta: usize,
    tau: usize,
    n: usize,
) -> Vec<Complex64> {
    let scale = 1.0 / (beta as f64).sqrt();
    let shift = tau as f64 / beta as f64;
    (0..n)
        .map(|m| {
            let u = m as f64 / n as f64 - shift;
            let step = Complex64::cis(TAU * u);
            let mut rot = Complex64::cis(TAU * beta as f64 * u);
            let mut acc = Complex64::ZERO;
            for w in weights {
                acc += w * rot;
                rot *= step;
            }
            acc * scale
        })
        .collect()
}

/// Sample the basis function of slot `b` on the n-point grid.
pub fn synthesize_basis(b: BandIndex, n: usize) -> Result<Signal> {
    let layout = partition(n)?;
    let band = *layout.band(b.p).map_err(|_| Error::InvalidBand { p: b.p, tau: b.tau, n })?;
    if b.tau >= band.width {
        return Err(Error::InvalidBand { p: b.p, tau: b.tau, n });
    }
    let samples = if band.p == 0 {
        vec![Complex64::ONE; n]
    } else if band.width == 1 && band.center as usize == n / 2 {
        (0..n)
            .map(|m| Complex64::new(if m % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect()
    } else {
        let w = beta(b.p);
        let mut samples = weighted_band_samples(&vec![Complex64::ONE; w], w, b.tau, n);
        if b.p < 0 {
            for z in &mut samples {
                *z = z.conj();
            }
        }
        samples
    };
    Signal::new(samples)
}

/// Fast analysis: one length-n FFT, then a length-beta DFT per band.
pub fn forward(s: &Signal) -> DostCoefficients {
    forward_from_spectrum(&dft(s))
}

pub(crate) fn forward_from_spectrum(sp: &Spectrum) -> DostCoefficients {
    let n = sp.len();
    let layout = partition(n).expect("spectrum length already validated");
    let mut values = vec![Complex64::ZERO; n];
    let mut planner = FftPlanner::new();
    for band in layout.bands() {
        if band.width == 1 {
            values[band.offset] = sp.bins()[band.bin(0, n)];
            continue;
        }
        // Positive band: coefficients are the unnormalized inverse DFT of
        // the band's bins, scaled by 1/sqrt(beta). Negative band: the slice
        // is already mirror-ordered, and conjugating the basis flips the
        // transform direction.
        let mut buf = band_slice(sp, band).expect("band from the same layout");
        let fft = if band.p > 0 {
            planner.plan_fft_inverse(band.width)
        } else {
            planner.plan_fft_forward(band.width)
        };
        fft.process(&mut buf);
        let scale = 1.0 / (band.width as f64).sqrt();
        for (dst, z) in values[band.offset..band.offset + band.width].iter_mut().zip(buf) {
            *dst = z * scale;
        }
    }
    DostCoefficients { layout, values }
}

/// Exact inverse of [`forward`].
pub fn inverse(c: &DostCoefficients) -> Signal {
    idft(&inverse_to_spectrum(c))
}

pub(crate) fn inverse_to_spectrum(c: &DostCoefficients) -> Spectrum {
    let n = c.n();
    let mut bins = vec![Complex64::ZERO; n];
    let mut planner = FftPlanner::new();
    for band in c.layout.bands() {
        let vals = &c.values[band.offset..band.offset + band.width];
        if band.width == 1 {
            bins[band.bin(0, n)] = vals[0];
            continue;
        }
        let mut buf = vals.to_vec();
        let fft = if band.p > 0 {
            planner.plan_fft_forward(band.width)
        } else {
            planner.plan_fft_inverse(band.width)
        };
        fft.process(&mut buf);
        let scale = 1.0 / (band.width as f64).sqrt();
        for (j, z) in buf.into_iter().enumerate() {
            bins[band.bin(j, n)] = z * scale;
        }
    }
    Spectrum::new(bins).expect("layout length is valid")
}

/// O(n^2) analysis oracle: inner products against synthesized basis
/// functions, no FFT shortcuts. Matches [`forward`] to rounding error.
pub fn forward_direct(s: &Signal) -> DostCoefficients {
    let n = s.len();
    let layout = partition(n).expect("signal length already validated");
    let mut values = vec![Complex64::ZERO; n];
    for band in layout.bands() {
        for tau in 0..band.width {
            let basis = synthesize_basis(BandIndex::new(band.p, tau), n)
                .expect("slot comes from the layout");
            let dot: Complex64 = s
                .samples()
                .iter()
                .zip(basis.samples())
                .map(|(x, d)| x * d.conj())
                .sum();
            values[band.offset + tau] = dot / n as f64;
        }
    }
    DostCoefficients { layout, values }
}
