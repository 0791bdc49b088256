//! On-disk formats.
//!
//! Signals travel as CSV (one sample per line, `re` or `re,im`) or as a
//! little-endian binary block with a 16-byte header: magic `DSTW`, u32
//! version, u64 length, then length re/im f64 pairs. Coefficients travel as
//! JSON carrying the full band layout, so readers never re-derive the
//! partition. CSV floats use the shortest round-trip representation, which
//! re-parses to the identical bits; the binary format is trivially lossless.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use stockwell::dost::DostCoefficients;
use stockwell::dyadic::partition;
use stockwell::{AdaptedCoefficients, Signal};

pub const MAGIC: &[u8; 4] = b"DSTW";
pub const VERSION: u32 = 1;

/// Failures split by exit code: validation problems (bad flags, malformed
/// content, violated invariants) exit 1, operating-system I/O failures
/// exit 2.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<stockwell::Error> for CliError {
    fn from(e: stockwell::Error) -> Self {
        match e {
            stockwell::Error::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Write to the path, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    use std::io::Write as _;
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

pub fn parse_signal_csv(text: &str) -> CliResult<Signal> {
    let mut samples = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let bad =
            || validation(format!("line {}: `{line}` is not a `re` or `re,im` sample", lineno + 1));
        let mut parts = line.split(',').map(str::trim);
        let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let im: f64 = match parts.next() {
            None => 0.0,
            Some(field) => field.parse().map_err(|_| bad())?,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        samples.push(Complex64::new(re, im));
    }
    Ok(Signal::new(samples)?)
}

pub fn signal_to_csv(s: &Signal) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for z in s.samples() {
        writeln!(out, "{},{}", z.re, z.im).expect("string writes cannot fail");
    }
    out
}

pub fn signal_to_bin(s: &Signal) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + 16 * s.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(s.len() as u64).to_le_bytes());
    for z in s.samples() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn parse_signal_bin(bytes: &[u8]) -> CliResult<Signal> {
    if bytes.len() < 16 || &bytes[..4] != MAGIC {
        return Err(validation("not a DSTW signal file (bad magic)"));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().expect("sliced to width"));
    if version != VERSION {
        return Err(validation(format!("unsupported signal format version {version}")));
    }
    let n = u64::from_le_bytes(bytes[8..16].try_into().expect("sliced to width")) as usize;
    let body = &bytes[16..];
    if body.len() != 16 * n {
        return Err(validation(format!(
            "header declares {n} samples but the body holds {} bytes",
            body.len()
        )));
    }
    let samples = body
        .chunks_exact(16)
        .map(|pair| {
            Complex64::new(
                f64::from_le_bytes(pair[..8].try_into().expect("sliced to width")),
                f64::from_le_bytes(pair[8..].try_into().expect("sliced to width")),
            )
        })
        .collect();
    Ok(Signal::new(samples)?)
}

/// One band of the serialized layout; `beta` is the band's width in the
/// layout (1 on the Nyquist singleton), `nu` its center frequency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandMeta {
    pub p: i32,
    pub beta: usize,
    pub nu: i64,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFile {
    pub n: usize,
    pub window: String,
    pub normalized: bool,
    pub bands: Vec<BandMeta>,
    pub values: Vec<[f64; 2]>,
}

impl CoefficientFile {
    pub fn from_adapted(c: &AdaptedCoefficients) -> Self {
        CoefficientFile {
            n: c.n(),
            window: c.window_id().to_string(),
            normalized: c.normalized(),
            bands: c
                .layout()
                .bands()
                .iter()
                .map(|b| BandMeta { p: b.p, beta: b.width, nu: b.center, offset: b.offset })
                .collect(),
            values: c.values().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text)
            .map_err(|e| validation(format!("malformed coefficient JSON: {e}")))
    }

    /// Rebuild the in-memory coefficients, checking the serialized layout
    /// against the canonical partition for `n`.
    pub fn into_adapted(self) -> CliResult<AdaptedCoefficients> {
        let layout = partition(self.n)?;
        if self.bands.len() != layout.bands().len() {
            return Err(validation(format!(
                "layout holds {} bands, n = {} requires {}",
                self.bands.len(),
                self.n,
                layout.bands().len()
            )));
        }
        for (meta, band) in self.bands.iter().zip(layout.bands()) {
            if meta.p != band.p
                || meta.beta != band.width
                || meta.nu != band.center
                || meta.offset != band.offset
            {
                return Err(validation(format!(
                    "band p = {} does not match the canonical layout for n = {}",
                    meta.p, self.n
                )));
            }
        }
        let values: Vec<Complex64> =
            self.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        let coeffs = DostCoefficients::new(layout, values)?;
        Ok(AdaptedCoefficients::new(coeffs, self.window, self.normalized))
    }
}
