//! Browser demo bindings. Three operations are exposed to JavaScript, each
//! a thin wrapper over a plain-Rust function that is unit-tested natively:
//!
//! * `analyze_signal`: transform a built-in test signal and return the
//!   coefficient tiling as JSON (band layout plus per-slot magnitudes).
//! * `basis_curve`: sample one adapted basis function, interleaved re/im.
//! * `window_profile`: frame bounds and the multiplier magnitude curve
//!   for a window spec.
//!
//! Build for the web with `wasm-pack build --target web --out-dir www/pkg`.

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use stockwell::adapted::{band_norms, forward_adapted, synthesize_adapted_basis};
use stockwell::dyadic::partition;
use stockwell::windows::{multiplier, validate, z_norm, DEFAULT_GRID};
use stockwell::{BandIndex, Signal, Window};

const TAU: f64 = std::f64::consts::TAU;

type DemoResult<T> = std::result::Result<T, String>;

/// One band row of the coefficient tiling sent to the page.
#[derive(Serialize)]
struct BandTile {
    p: i32,
    width: usize,
    center: i64,
    /// |coefficient| for tau = 0..width.
    magnitudes: Vec<f64>,
}

#[derive(Serialize)]
struct AnalysisView {
    n: usize,
    window: String,
    normalized: bool,
    /// Interleaved re/im samples of the analyzed signal.
    signal: Vec<f64>,
    bands: Vec<BandTile>,
}

#[derive(Serialize)]
struct WindowView {
    window: String,
    delta: f64,
    m_sup: f64,
    lower: f64,
    upper: f64,
    z_norm: f64,
    /// Multiplier magnitudes |R(k)| for k = 0..n.
    multiplier: Vec<f64>,
    band_norms: Vec<f64>,
}

/// Built-in demo signals. Everything is complex-valued; the page plots the
/// real part and the coefficient magnitudes.
fn demo_signal(name: &str, n: usize) -> DemoResult<Signal> {
    let nf = n as f64;
    let tone = |m: usize, k: f64| Complex64::cis(TAU * k * m as f64 / nf);
    // Linear chirp ramping from bin f0 to bin f1 across the frame.
    let chirp = |m: usize, f0: f64, f1: f64| {
        let t = m as f64 / nf;
        Complex64::cis(TAU * (f0 * t + 0.5 * (f1 - f0) * t * t))
    };
    let samples: Vec<Complex64> = match name {
        "tones" => (0..n).map(|m| tone(m, nf / 8.0) + tone(m, nf / 3.2) * 0.6).collect(),
        "chirp" => (0..n).map(|m| chirp(m, 2.0, nf / 4.0)).collect(),
        "pulse" => (0..n)
            .map(|m| {
                let t = (m as f64 - nf / 2.0) / nf;
                tone(m, nf / 6.0) * (-t * t * 512.0).exp()
            })
            .collect(),
        "mix" => (0..n)
            .map(|m| {
                let g = (m as f64 - 0.7 * nf) / nf;
                chirp(m, 2.0, nf / 4.0) * 0.7 + tone(m, nf / 8.0) * (-g * g * 512.0).exp()
            })
            .collect(),
        other => {
            return Err(format!(
                "unknown demo signal `{other}` (expected tones, chirp, pulse, or mix)"
            ))
        }
    };
    Signal::new(samples).map_err(|e| e.to_string())
}

/// Plain-Rust core of `analyze_signal`.
pub fn analysis_view(signal: &str, spec: &str, n: usize, normalized: bool) -> DemoResult<String> {
    let w = Window::from_spec(spec).map_err(|e| e.to_string())?;
    let s = demo_signal(signal, n)?;
    let c = forward_adapted(&w, &s, normalized).map_err(|e| e.to_string())?;
    let layout = partition(n).map_err(|e| e.to_string())?;
    let bands = layout
        .bands()
        .iter()
        .map(|band| BandTile {
            p: band.p,
            width: band.width,
            center: band.center,
            magnitudes: (0..band.width)
                .map(|tau| c.values()[band.offset + tau].norm())
                .collect(),
        })
        .collect();
    let view = AnalysisView {
        n,
        window: w.id().to_string(),
        normalized,
        signal: s.samples().iter().flat_map(|z| [z.re, z.im]).collect(),
        bands,
    };
    Ok(serde_json::to_string(&view).expect("plain data serializes"))
}

/// Plain-Rust core of `basis_curve`: interleaved re/im samples.
pub fn basis_samples(
    spec: &str,
    p: i32,
    tau: usize,
    n: usize,
    normalized: bool,
) -> DemoResult<Vec<f64>> {
    let w = Window::from_spec(spec).map_err(|e| e.to_string())?;
    let f = synthesize_adapted_basis(&w, BandIndex::new(p, tau), n, normalized)
        .map_err(|e| e.to_string())?;
    Ok(f.samples().iter().flat_map(|z| [z.re, z.im]).collect())
}

/// Plain-Rust core of `window_profile`.
pub fn window_view(spec: &str, n: usize) -> DemoResult<String> {
    let w = Window::from_spec(spec).map_err(|e| e.to_string())?;
    let fb = validate(&w, DEFAULT_GRID).map_err(|e| e.to_string())?;
    let r = multiplier(&w, n).map_err(|e| e.to_string())?;
    let norms = band_norms(&w, n).map_err(|e| e.to_string())?;
    let view = WindowView {
        window: w.id().to_string(),
        delta: fb.delta,
        m_sup: fb.m_sup,
        lower: fb.lower,
        upper: fb.upper,
        z_norm: z_norm(&w, DEFAULT_GRID).map_err(|e| e.to_string())?,
        multiplier: r.iter().map(|z| z.norm()).collect(),
        band_norms: norms.as_slice().to_vec(),
    };
    Ok(serde_json::to_string(&view).expect("plain data serializes"))
}

#[wasm_bindgen]
pub fn analyze_signal(
    signal: &str,
    window_spec: &str,
    n: usize,
    normalized: bool,
) -> std::result::Result<String, JsError> {
    analysis_view(signal, window_spec, n, normalized).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn basis_curve(
    window_spec: &str,
    p: i32,
    tau: usize,
    n: usize,
    normalized: bool,
) -> std::result::Result<Vec<f64>, JsError> {
    basis_samples(window_spec, p, tau, n, normalized).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn window_profile(window_spec: &str, n: usize) -> std::result::Result<String, JsError> {
    window_view(window_spec, n).map_err(|e| JsError::new(&e))
}
