//! The fully redundant time-frequency transform, one voice per DFT bin.
//!
//! Voice k of an n-point signal is
//!
//! ```text
//! row_k[j] = Σ_m e^{2πi m j / n} f̂(m + ξ) g(m/ξ),   ξ = signed frequency of k,
//! ```
//!
//! with m running over the centered range [-n/2, n/2), f̂ taken n-periodic,
//! and g either the sampled Gaussian e^{-2π²(m/ξ)²} or the conjugated
//! profile of an admissible window (zero outside [-1/3, 1/3)). The mj/n
//! phase references every voice to absolute time: an exact tone produces a
//! constant row at its own frequency, and the DC voice is defined as the
//! signal mean. Windowed voices at a band center see exactly that band's
//! bins, which is what ties this transform to the fast one: on the dyadic
//! grid, voice nu(p) sampled at b = tau/beta equals (-1)^tau sqrt(beta)
//! times the dyadic coefficient.
//!
//! Everything here is deliberately O(n² log n): it is the reference the
//! fast paths are measured against, not a production transform.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectrum::{dft, Signal};
use crate::windows::Window;

/// Dense n×n transform values; entry (j, k) is voice k at time j/n.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFreqMatrix {
    n: usize,
    /// Voice-major: data[k * n + j].
    data: Vec<Complex64>,
}

impl TimeFreqMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Value at time j/n, frequency bin k (bins above n/2 are the negative
    /// frequencies k - n).
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[k * self.n + j]
    }

    pub fn voice(&self, k: usize) -> &[Complex64] {
        &self.data[k * self.n..(k + 1) * self.n]
    }
}

/// Signed frequency of bin k: bins above n/2 wrap negative.
fn signed_frequency(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// One voice from the spectrum: assemble h[m mod n] = f̂(m + ξ) g(m) over
/// the centered range, then an unnormalized inverse DFT.
fn voice_from_bins<G>(bins: &[Complex64], xi: i64, weight: G) -> Vec<Complex64>
where
    G: Fn(i64) -> Complex64,
{
    let n = bins.len();
    let half = (n / 2) as i64;
    let mut h = vec![Complex64::ZERO; n];
    for m in -half..half {
        let g = weight(m);
        if g == Complex64::ZERO {
            continue;
        }
        let src = (m + xi).rem_euclid(n as i64) as usize;
        let dst = m.rem_euclid(n as i64) as usize;
        h[dst] = bins[src] * g;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut h);
    h
}

fn full_matrix<W>(s: &Signal, weight_at: W) -> TimeFreqMatrix
where
    W: Fn(i64, i64) -> Complex64,
{
    let n = s.len();
    let bins = dft(s);
    let mut data = vec![Complex64::ZERO; n * n];
    // Voice 0 is the mean.
    data[..n].fill(bins.bins()[0]);
    for k in 1..n {
        let xi = signed_frequency(k, n);
        let row = voice_from_bins(bins.bins(), xi, |m| weight_at(m, xi));
        data[k * n..(k + 1) * n].copy_from_slice(&row);
    }
    TimeFreqMatrix { n, data }
}

/// Redundant transform with the sampled Gaussian kernel e^{-2π²m²/ξ²}.
pub fn redundant_gaussian(s: &Signal) -> TimeFreqMatrix {
    full_matrix(s, |m, xi| {
        let r = m as f64 / xi as f64;
        Complex64::new((-2.0 * PI * PI * r * r).exp(), 0.0)
    })
}

/// Redundant transform with an admissible window: weight conj(φ̂(m/ξ)),
/// zero outside the support. Negative voices evaluate the window at
/// negative-over-negative ratios, which lands on the same arguments as the
/// mirrored positive voice.
pub fn redundant_windowed(w: &Window, s: &Signal) -> TimeFreqMatrix {
    full_matrix(s, |m, xi| w.evaluate_supported(m as f64 / xi as f64).conj())
}

/// Single voice of [`redundant_windowed`], O(n log n).
pub fn voice(w: &Window, s: &Signal, k: usize) -> Result<Vec<Complex64>> {
    let n = s.len();
    if k >= n {
        return Err(Error::BinRange { k, n });
    }
    let bins = dft(s);
    if k == 0 {
        return Ok(vec![bins.bins()[0]; n]);
    }
    let xi = signed_frequency(k, n);
    Ok(voice_from_bins(bins.bins(), xi, |m| {
        w.evaluate_supported(m as f64 / xi as f64).conj()
    }))
}
