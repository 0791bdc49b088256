//! Window-adapted bases, built from the dyadic one by a spectral multiplier.
//!
//! For a window φ the adapted function on band (p, tau), |p| >= 2, is
//!
//! ```text
//! E_{p,tau}(t) = (1/sqrt(beta)) Σ_j c_phi(p, j)^{-1} e^{2πi(beta+j)(t - tau/beta)}
//! ```
//!
//! with negative bands conjugated and width-1 bands (DC, fundamental,
//! Nyquist) scaled by the fixed multiplier entries. Dividing by the band
//! norm N_p gives the unit-norm family F_{p,tau}, a Riesz basis whose frame
//! operator is diagonal in frequency: multiplication by |R̃(k)|², where R̃
//! is the multiplier with each band scaled by 1/N_p. Analysis therefore
//! reduces to: multiply the spectrum by R̃ (or R), run the fast dyadic
//! transform. For the boxcar c ≡ 1 and everything collapses to
//! [`crate::dost`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dost::{self, weighted_band_samples, BandIndex, DostCoefficients};
use crate::dyadic::{partition, BandPartition};
use crate::error::{Error, Result};
use crate::spectrum::{dft, idft, Signal};
use crate::windows::{band_argument, c_phi, multiplier, validate, FrameBounds, Window, DEFAULT_GRID};

/// Per-band normalization constants N_p = ||E_{p,0}||, aligned with the
/// layout's band order. Equal to (1/sqrt(beta)) sqrt(Σ_j |c_phi(p,j)|^{-2})
/// on regular bands and to the multiplier magnitude on width-1 bands;
/// always within [1/m_sup, 1/delta].
#[derive(Debug, Clone, PartialEq)]
pub struct BandNorms {
    layout: BandPartition,
    norms: Vec<f64>,
}

impl BandNorms {
    pub fn layout(&self) -> &BandPartition {
        &self.layout
    }

    /// Norms in layout band order.
    pub fn as_slice(&self) -> &[f64] {
        &self.norms
    }

    pub fn get(&self, p: i32) -> Result<f64> {
        let slot = self
            .layout
            .bands()
            .iter()
            .position(|b| b.p == p)
            .ok_or(Error::InvalidBand { p, tau: 0, n: self.layout.n() })?;
        Ok(self.norms[slot])
    }
}

/// Band norms for an n-point layout. Uniformly: the root mean square of
/// the multiplier magnitudes over the band's bins (which is 1 on DC and
/// Nyquist, 1/|c| on the fundamentals).
pub fn band_norms(w: &Window, n: usize) -> Result<BandNorms> {
    let r = multiplier(w, n)?;
    Ok(norms_from_multiplier(&r, partition(n)?))
}

fn norms_from_multiplier(r: &[Complex64], layout: BandPartition) -> BandNorms {
    let n = layout.n();
    let norms = layout
        .bands()
        .iter()
        .map(|band| {
            let sum: f64 = (0..band.width).map(|j| r[band.bin(j, n)].norm_sqr()).sum();
            (sum / band.width as f64).sqrt()
        })
        .collect();
    BandNorms { layout, norms }
}

/// The multiplier with each band divided by its norm, plus the norms.
fn normalized_multiplier(w: &Window, n: usize) -> Result<(Vec<Complex64>, BandNorms)> {
    let mut r = multiplier(w, n)?;
    let norms = norms_from_multiplier(&r, partition(n)?);
    for (band, norm) in norms.layout.bands().iter().zip(&norms.norms) {
        for j in 0..band.width {
            r[band.bin(j, n)] /= norm;
        }
    }
    Ok((r, norms))
}

/// Adapted analysis coefficients; layout as in [`DostCoefficients`], plus
/// the window identity and whether the unit-norm family was used.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedCoefficients {
    coeffs: DostCoefficients,
    window_id: String,
    normalized: bool,
}

impl AdaptedCoefficients {
    pub fn new(coeffs: DostCoefficients, window_id: String, normalized: bool) -> Self {
        Self { coeffs, window_id, normalized }
    }

    pub fn n(&self) -> usize {
        self.coeffs.n()
    }

    pub fn layout(&self) -> &BandPartition {
        self.coeffs.layout()
    }

    pub fn values(&self) -> &[Complex64] {
        self.coeffs.values()
    }

    pub fn get(&self, b: BandIndex) -> Result<Complex64> {
        self.coeffs.get(b)
    }

    pub fn window_id(&self) -> &str {
        &self.window_id
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.energy()
    }

    pub fn into_inner(self) -> DostCoefficients {
        self.coeffs
    }
}

/// Inverse window coefficients for one band, the weights of the adapted
/// basis function. Errors if the window vanishes or blows up on a bin.
fn band_weights(w: &Window, p: i32, width: usize) -> Result<Vec<Complex64>> {
    (0..width)
        .map(|j| {
            let c = c_phi(w, p, j)?;
            let xi = band_argument(p, j);
            if c.norm() == 0.0 {
                return Err(Error::ZeroOnSupport { xi });
            }
            let inv = c.inv();
            if !inv.is_finite() {
                return Err(Error::NonFinite { xi });
            }
            Ok(inv)
        })
        .collect()
}

/// Sample the adapted basis function of slot `b` (E, or F = E/N_p when
/// `normalized`) on the n-point grid.
pub fn synthesize_adapted_basis(
    w: &Window,
    b: BandIndex,
    n: usize,
    normalized: bool,
) -> Result<Signal> {
    let layout = partition(n)?;
    let band = *layout.band(b.p).map_err(|_| Error::InvalidBand { p: b.p, tau: b.tau, n })?;
    if b.tau >= band.width {
        return Err(Error::InvalidBand { p: b.p, tau: b.tau, n });
    }
    // Width-1 bands keep their pure exponentials: the multiplier is 1 at DC
    // and Nyquist, and the fundamentals carry the single weight c^{-1}.
    if band.p == 0 || (band.width == 1 && band.center as usize == n / 2) {
        return dost::synthesize_basis(b, n);
    }
    let weights = band_weights(w, b.p, band.width)?;
    let norm = if normalized {
        (weights.iter().map(|z| z.norm_sqr()).sum::<f64>() / band.width as f64).sqrt()
    } else {
        1.0
    };
    let mut samples = weighted_band_samples(&weights, band.width, b.tau, n);
    for z in &mut samples {
        *z /= norm;
        if b.p < 0 {
            *z = z.conj();
        }
    }
    Signal::new(samples)
}

/// Adapted analysis: multiply the spectrum by the (optionally normalized)
/// multiplier, then run the fast dyadic transform. Coefficient (p, tau) is
/// the inner product of the signal with E_{p,tau} (or F_{p,tau}).
pub fn forward_adapted(w: &Window, s: &Signal, normalized: bool) -> Result<AdaptedCoefficients> {
    let r = resolve_multiplier(w, s.len(), normalized)?;
    let mut sp = dft(s);
    for (bin, m) in sp.bins_mut().iter_mut().zip(&r) {
        *bin *= m;
    }
    Ok(AdaptedCoefficients {
        coeffs: dost::forward_from_spectrum(&sp),
        window_id: w.id().to_string(),
        normalized,
    })
}

/// Exact inverse of [`forward_adapted`] for the same window and flag.
pub fn inverse_adapted(w: &Window, c: &AdaptedCoefficients) -> Result<Signal> {
    if c.window_id != w.id() {
        return Err(Error::InvalidWindow(format!(
            "coefficients carry window `{}`, got `{}`",
            c.window_id,
            w.id()
        )));
    }
    let r = resolve_multiplier(w, c.n(), c.normalized)?;
    let mut sp = dost::inverse_to_spectrum(&c.coeffs);
    for (bin, m) in sp.bins_mut().iter_mut().zip(&r) {
        *bin /= m;
    }
    Ok(idft(&sp))
}

fn resolve_multiplier(w: &Window, n: usize, normalized: bool) -> Result<Vec<Complex64>> {
    if normalized {
        Ok(normalized_multiplier(w, n)?.0)
    } else {
        multiplier(w, n)
    }
}

/// Frame diagnostics: theoretical bounds from the window's support
/// extremes, observed Rayleigh quotients of seeded random signals, and the
/// exact extremal quotients over frequency bins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameReport {
    pub bounds: FrameBounds,
    /// Smallest/largest Σ|(f, F_{p,tau})|² / ||f||² over the trials; NaN
    /// when `trials` is 0.
    pub min_q: f64,
    pub max_q: f64,
    /// Exact extremes min_k/max_k |R̃(k)|², the quotients of pure
    /// exponentials.
    pub exact_min: f64,
    pub exact_max: f64,
    pub trials: usize,
}

/// Draw `trials` random signals (uniform complex entries, ChaCha8 seeded
/// with `seed`) and check every Rayleigh quotient of the unit-norm family
/// against the theoretical bounds, with 1e-9 slack for rounding. The exact
/// per-bin extremes are checked too.
pub fn frame_analysis(w: &Window, n: usize, trials: usize, seed: u64) -> Result<FrameReport> {
    let bounds = validate(w, DEFAULT_GRID)?;
    let (rt, _) = normalized_multiplier(w, n)?;
    let (lo, hi) = (bounds.lower - 1e-9, bounds.upper + 1e-9);
    let check = |q: f64| {
        if (lo..=hi).contains(&q) {
            Ok(q)
        } else {
            Err(Error::FrameViolation { q, lower: bounds.lower, upper: bounds.upper })
        }
    };
    let mut exact_min = f64::INFINITY;
    let mut exact_max = 0.0f64;
    for z in &rt {
        let q = check(z.norm_sqr())?;
        exact_min = exact_min.min(q);
        exact_max = exact_max.max(q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_q = f64::NAN;
    let mut max_q = f64::NAN;
    for _ in 0..trials {
        let s = random_signal(&mut rng, n);
        let c = forward_adapted(w, &s, true)?;
        let q = check(c.energy() / s.energy())?;
        min_q = if min_q.is_nan() { q } else { min_q.min(q) };
        max_q = if max_q.is_nan() { q } else { max_q.max(q) };
    }
    Ok(FrameReport { bounds, min_q, max_q, exact_min, exact_max, trials })
}

/// Deterministic test signal: i.i.d. uniform complex entries in the unit
/// square, renormalized to unit energy.
pub fn random_signal<R: Rng>(rng: &mut R, n: usize) -> Signal {
    let samples: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let s = Signal::new(samples).expect("caller passes valid n");
    let scale = 1.0 / s.energy().sqrt();
    Signal::new(s.into_samples().into_iter().map(|z| z * scale).collect()).unwrap()
}

/// Coefficients against the canonical dual frame: (f, F̃_{p,tau}) with
/// F̃ = S^{-1} F. Since the frame operator is diagonal (multiplication by
/// |R̃(k)|² in frequency), this is analysis of the signal whose spectrum is
/// f̂/conj(R̃). Reconstruction Σ (f, F̃_{p,tau}) F_{p,tau} returns f.
pub fn dual_analysis(w: &Window, s: &Signal) -> Result<AdaptedCoefficients> {
    let (rt, _) = normalized_multiplier(w, s.len())?;
    let mut sp = dft(s);
    for (bin, m) in sp.bins_mut().iter_mut().zip(&rt) {
        *bin /= m.conj();
    }
    Ok(AdaptedCoefficients {
        coeffs: dost::forward_from_spectrum(&sp),
        window_id: w.id().to_string(),
        normalized: true,
    })
}
