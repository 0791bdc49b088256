//! Admissible analysis windows and the spectral calculus built on them.
//!
//! A window enters through its frequency profile φ̂, supported on the
//! normalized interval [-1/3, 1/3): continuous and nonzero inside, zero
//! outside, with a finite limit from the right at -1/3. The left endpoint
//! is *included* with that limit value (1 for the boxcar): on the dyadic
//! grid the j = 0 bin of every band evaluates exactly there, while the
//! first bin of the next band lands exactly on +1/3 and must see zero.
//! That closed/open split is what the cross-band cancellation of
//! [`crate::stransform`] hinges on.
//!
//! From φ̂ we derive, per band p with center nu and width beta:
//!
//! * `c_phi(p, j) = conj(φ̂((beta + j - nu)/nu))`, the in-band window
//!   samples (the argument is the same for p and -p: frequency and center
//!   negate together);
//! * the multiplier `R` with `R[beta + j] = conj(1/c_phi(p, j))` on
//!   positive bins, mirrored conjugate-symmetrically onto negative ones,
//!   and fixed to 1 at DC and Nyquist where no window geometry applies.
//!
//! The truncated Gaussian here is exactly φ̂(ξ) = e^{-(ξ-mu)²/(2σ²)} cut to
//! the support; its extremes on the support drive every frame bound quoted
//! by this crate.

use num_complex::Complex64;
use std::path::Path;

use crate::dyadic::{band_of_frequency, beta, nu};
use crate::error::{check_length, Error, Result};

/// fl(1/3). All support comparisons use this constant; in-band evaluation
/// arguments are quotients of exact integers, so an argument whose true
/// value is ±1/3 rounds to exactly ±THIRD and the endpoint tests below are
/// exact, not fuzzy.
const THIRD: f64 = 1.0 / 3.0;

/// Default quadrature/validation grid: 4096 panels. Every in-band argument
/// (2j - beta)/(3beta) with beta <= 1024 lies exactly on this grid, so the
/// reported extremes genuinely bracket the multiplier for n <= 4096.
pub const DEFAULT_GRID: usize = 4097;

/// Coarsest grid accepted by [`validate`] and [`z_norm`].
pub const MIN_GRID: usize = 1025;

#[derive(Debug, Clone, PartialEq)]
pub enum WindowKind {
    /// φ̂ = 1 on the support.
    Boxcar,
    /// φ̂(ξ) = e^{-(ξ-mu)²/(2 sigma²)} on the support.
    Gaussian { mu: f64, sigma: f64 },
    /// Complex samples on a strictly increasing grid spanning the support,
    /// evaluated by linear interpolation.
    Tabulated { xi: Vec<f64>, values: Vec<Complex64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    kind: WindowKind,
    id: String,
}

/// Support extremes and the frame bounds they imply.
///
/// `delta` and `m_sup` are the grid infimum/supremum of |φ̂|; `lower` and
/// `upper` are (delta/m_sup)² and (m_sup/delta)². Grid extremes approximate
/// the true ones from inside, except that grids whose panel count is a
/// multiple of every band width (the default) hit all in-band arguments
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub delta: f64,
    pub m_sup: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Window {
    pub fn boxcar() -> Self {
        Self { kind: WindowKind::Boxcar, id: "boxcar".into() }
    }

    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidWindow(format!(
                "gaussian needs finite mu and sigma > 0, got mu = {mu}, sigma = {sigma}"
            )));
        }
        Ok(Self {
            kind: WindowKind::Gaussian { mu, sigma },
            id: format!("gaussian:mu={mu},sigma={sigma}"),
        })
    }

    /// Tabulated window on an explicit strictly increasing grid. The grid
    /// must span [-1/3, 1/3] (up to 1e-6 slack for decimal endpoints);
    /// evaluation clamps into the table hull. Samples must be finite and
    /// nonzero, or the window could not be admissible.
    pub fn tabulated(xi: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        Self::tabulated_with_id(xi, values, "tabulated".into())
    }

    /// Tabulated window with samples spread uniformly over [-1/3, 1/3].
    pub fn tabulated_uniform(values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidWindow("need at least 2 samples".into()));
        }
        let g = values.len();
        let xi = (0..g).map(|i| grid_point(i, g)).collect();
        Self::tabulated_with_id(xi, values, "tabulated".into())
    }

    fn tabulated_with_id(xi: Vec<f64>, values: Vec<Complex64>, id: String) -> Result<Self> {
        if xi.len() != values.len() {
            return Err(Error::InvalidWindow(format!(
                "{} grid points but {} values",
                xi.len(),
                values.len()
            )));
        }
        if xi.len() < 2 {
            return Err(Error::InvalidWindow("need at least 2 samples".into()));
        }
        for (x, v) in xi.iter().zip(&values) {
            if !x.is_finite() || !v.is_finite() {
                return Err(Error::NonFinite { xi: *x });
            }
            if v.norm() == 0.0 {
                return Err(Error::ZeroOnSupport { xi: *x });
            }
        }
        if !xi.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidWindow("grid must be strictly increasing".into()));
        }
        const SLACK: f64 = 1e-6;
        if xi[0] > -THIRD + SLACK || xi[xi.len() - 1] < THIRD - SLACK {
            return Err(Error::InvalidWindow(format!(
                "grid [{}, {}] does not span [-1/3, 1/3]",
                xi[0],
                xi[xi.len() - 1]
            )));
        }
        Ok(Self { kind: WindowKind::Tabulated { xi, values }, id })
    }

    /// Parse a window spec string: `boxcar`, `gaussian:mu=<f>,sigma=<f>`,
    /// or `file:<path>` naming a CSV of `xi,re,im` rows.
    pub fn from_spec(spec: &str) -> Result<Self> {
        if spec == "boxcar" {
            return Ok(Self::boxcar());
        }
        if let Some(params) = spec.strip_prefix("gaussian:") {
            let (mut mu, mut sigma) = (None, None);
            for part in params.split(',') {
                let (key, val) = part
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidWindow(format!("bad parameter `{part}`")))?;
                let val: f64 = val.trim().parse().map_err(|_| {
                    Error::InvalidWindow(format!("`{val}` is not a number in `{spec}`"))
                })?;
                let slot = match key.trim() {
                    "mu" => &mut mu,
                    "sigma" => &mut sigma,
                    other => {
                        return Err(Error::InvalidWindow(format!("unknown parameter `{other}`")))
                    }
                };
                if slot.replace(val).is_some() {
                    return Err(Error::InvalidWindow(format!("duplicate `{key}` in `{spec}`")));
                }
            }
            return match (mu, sigma) {
                (Some(mu), Some(sigma)) => Self::gaussian(mu, sigma),
                _ => Err(Error::InvalidWindow(format!("`{spec}` needs both mu and sigma"))),
            };
        }
        if let Some(path) = spec.strip_prefix("file:") {
            return Self::from_table_file(path);
        }
        Err(Error::InvalidWindow(format!(
            "unrecognized window spec `{spec}` (expected boxcar, gaussian:mu=..,sigma=.., or file:..)"
        )))
    }

    /// Load a tabulated window from a CSV file of `xi,re,im` rows.
    pub fn from_table_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_table_str(&text, format!("file:{}", path.display()))
    }

    /// Parse CSV rows `xi,re,im` (blank lines skipped) into a tabulated
    /// window carrying the given id.
    pub fn from_table_str(text: &str, id: String) -> Result<Self> {
        let mut xi = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::InvalidWindow(format!(
                    "line {}: expected `xi,re,im`, got `{line}`",
                    lineno + 1
                )));
            }
            let nums: Vec<f64> = fields
                .iter()
                .map(|f| f.trim().parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| {
                    Error::InvalidWindow(format!("line {}: `{line}` is not numeric", lineno + 1))
                })?;
            xi.push(nums[0]);
            values.push(Complex64::new(nums[1], nums[2]));
        }
        Self::tabulated_with_id(xi, values, id)
    }

    /// Canonical spec string this window was built from.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> &WindowKind {
        &self.kind
    }

    /// φ̂ on the closed interval [-1/3, 1/3], endpoints filled with the
    /// one-sided limits from inside the support. Assumes the argument is
    /// in range.
    fn eval_inner(&self, xi: f64) -> Complex64 {
        match &self.kind {
            WindowKind::Boxcar => Complex64::ONE,
            WindowKind::Gaussian { mu, sigma } => {
                let z = (xi - mu) / sigma;
                Complex64::new((-0.5 * z * z).exp(), 0.0)
            }
            WindowKind::Tabulated { xi: grid, values } => {
                let x = xi.clamp(grid[0], grid[grid.len() - 1]);
                let hi = grid.partition_point(|&g| g < x).min(grid.len() - 1).max(1);
                let lo = hi - 1;
                let span = grid[hi] - grid[lo];
                let t = ((x - grid[lo]) / span).clamp(0.0, 1.0);
                values[lo] * (1.0 - t) + values[hi] * t
            }
        }
    }

    /// Evaluate φ̂ at a point of [-1/3, 1/3); the left endpoint yields the
    /// limit value. Arguments outside the half-open support are rejected.
    pub fn evaluate(&self, xi: f64) -> Result<Complex64> {
        if !(-THIRD..THIRD).contains(&xi) {
            return Err(Error::InvalidWindow(format!(
                "evaluation point {xi} is outside [-1/3, 1/3)"
            )));
        }
        Ok(self.eval_inner(xi))
    }

    /// Evaluate φ̂ as a function on the whole line: the value on
    /// [-1/3, 1/3), zero elsewhere (including at +1/3 exactly, where the
    /// first bin of the next band must not leak through).
    pub fn evaluate_supported(&self, xi: f64) -> Complex64 {
        if (-THIRD..THIRD).contains(&xi) {
            self.eval_inner(xi)
        } else {
            Complex64::ZERO
        }
    }

    /// The finite limit of φ̂ from the right at -1/3 (the value the j = 0
    /// bin of every band sees).
    pub fn left_limit(&self) -> Complex64 {
        self.eval_inner(-THIRD)
    }
}

/// i-th point of the g-point closed uniform grid on [-1/3, 1/3].
fn grid_point(i: usize, g: usize) -> f64 {
    -THIRD + 2.0 * THIRD * i as f64 / (g - 1) as f64
}

/// Scan |φ̂| on a uniform grid (endpoints included via one-sided limits)
/// and report the extremes together with the frame bounds they imply.
/// Fails on zeros or non-finite values: either kills admissibility.
pub fn validate(w: &Window, grid_size: usize) -> Result<FrameBounds> {
    if grid_size < MIN_GRID {
        return Err(Error::GridTooCoarse(grid_size, MIN_GRID));
    }
    let mut delta = f64::INFINITY;
    let mut m_sup = 0.0f64;
    for i in 0..grid_size {
        let xi = grid_point(i, grid_size);
        let v = w.eval_inner(xi);
        if !v.is_finite() {
            return Err(Error::NonFinite { xi });
        }
        let mag = v.norm();
        if mag == 0.0 {
            return Err(Error::ZeroOnSupport { xi });
        }
        delta = delta.min(mag);
        m_sup = m_sup.max(mag);
    }
    Ok(FrameBounds {
        delta,
        m_sup,
        lower: (delta / m_sup) * (delta / m_sup),
        upper: (m_sup / delta) * (m_sup / delta),
    })
}

/// Window argument of the j-th bin of band |p|: (beta + j - nu)/nu. For
/// |p| >= 2 it runs over [-1/3, 1/3) hitting -1/3 at j = 0; for p = ±1 it
/// is 0.
pub(crate) fn band_argument(p: i32, j: usize) -> f64 {
    let center = nu(p.abs()) as f64;
    (beta(p) as f64 + j as f64 - center) / center
}

/// In-band window coefficient c_phi(p, j) = conj(φ̂((beta + j - nu)/nu)),
/// beta and nu taken at |p|: the argument is invariant under p -> -p.
/// The DC band has nu = 0 and is rejected.
pub fn c_phi(w: &Window, p: i32, j: usize) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::DcBand);
    }
    let width = beta(p);
    if j >= width {
        return Err(Error::BandOffset { p, j, width });
    }
    let arg = band_argument(p, j);
    debug_assert!((-THIRD..THIRD).contains(&arg));
    Ok(w.eval_inner(arg).conj())
}

/// The n-point spectral multiplier: R[beta + j] = conj(1/c_phi(p, j)) on
/// positive band bins, R[n - k] = conj(R[k]) on negative ones, R = 1 at DC
/// and Nyquist. Fails if any window sample is zero or not finite.
pub fn multiplier(w: &Window, n: usize) -> Result<Vec<Complex64>> {
    check_length(n)?;
    let mut r = vec![Complex64::ONE; n];
    for k in 1..n / 2 {
        let (p, j) = band_of_frequency(k, n).expect("k below Nyquist");
        let c = c_phi(w, p, j)?;
        let xi = band_argument(p, j);
        if !c.is_finite() {
            return Err(Error::NonFinite { xi });
        }
        if c.norm() == 0.0 {
            return Err(Error::ZeroOnSupport { xi });
        }
        let entry = c.inv().conj();
        if !entry.is_finite() {
            return Err(Error::NonFinite { xi });
        }
        r[k] = entry;
        r[n - k] = entry.conj();
    }
    Ok(r)
}

/// Squared Z-norm ∫ |φ̂(ξ)|² dξ/|1+ξ| over the support, by the trapezoid
/// rule on a uniform grid with one-sided limit values at the endpoints.
/// Scales quadratically: z_norm(2φ̂) = 4 z_norm(φ̂). The boxcar integrates
/// to ln 2.
pub fn z_norm(w: &Window, grid_size: usize) -> Result<f64> {
    if grid_size < MIN_GRID {
        return Err(Error::GridTooCoarse(grid_size, MIN_GRID));
    }
    let h = 2.0 * THIRD / (grid_size - 1) as f64;
    let mut acc = 0.0;
    for i in 0..grid_size {
        let xi = grid_point(i, grid_size);
        let v = w.eval_inner(xi);
        if !v.is_finite() {
            return Err(Error::NonFinite { xi });
        }
        let term = v.norm_sqr() / (1.0 + xi).abs();
        acc += if i == 0 || i == grid_size - 1 { 0.5 * term } else { term };
    }
    Ok(acc * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn boxcar_bounds_are_unit() {
        let fb = validate(&Window::boxcar(), DEFAULT_GRID).unwrap();
        assert_eq!(fb.delta, 1.0);
        assert_eq!(fb.m_sup, 1.0);
        assert_eq!(fb.lower, 1.0);
        assert_eq!(fb.upper, 1.0);
    }

    #[test]
    fn unit_gaussian_bounds() {
        // Extremes of e^{-ξ²/2} on [-1/3, 1/3] sit at the endpoints and 0,
        // all of which are grid points, so the bounds are exact.
        let fb = validate(&Window::gaussian(0.0, 1.0).unwrap(), DEFAULT_GRID).unwrap();
        assert!((fb.delta - (-1.0f64 / 18.0).exp()).abs() < 1e-15);
        assert!((fb.m_sup - 1.0).abs() < 1e-15);
        assert!((fb.lower - (-1.0f64 / 9.0).exp()).abs() < 1e-15);
        assert!((fb.upper - (1.0f64 / 9.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn boxcar_c_is_one_everywhere() {
        for p in [-8, -3, -1, 1, 2, 3, 8] {
            for j in 0..beta(p) {
                let c = c_phi(&Window::boxcar(), p, j).unwrap();
                assert_eq!(c, Complex64::ONE, "p {p} j {j}");
            }
        }
    }

    #[test]
    fn gaussian_c_at_band_edge() {
        // j = 0 evaluates at the left endpoint -1/3.
        let w = Window::gaussian(0.0, 1.0).unwrap();
        let c = c_phi(&w, 2, 0).unwrap();
        assert!((c.re - (-1.0f64 / 18.0).exp()).abs() < 1e-15);
        assert_eq!(c.im, 0.0);
    }

    #[test]
    fn c_rejects_dc_and_overflow_offsets() {
        let w = Window::boxcar();
        assert_eq!(c_phi(&w, 0, 0), Err(Error::DcBand));
        assert!(matches!(c_phi(&w, 3, 4), Err(Error::BandOffset { .. })));
    }

    #[test]
    fn boxcar_multiplier_is_identity() {
        let r = multiplier(&Window::boxcar(), 16).unwrap();
        assert!(r.iter().all(|&z| z == Complex64::ONE));
    }

    #[test]
    fn gaussian_multiplier_entries() {
        let r = multiplier(&Window::gaussian(0.0, 1.0).unwrap(), 16).unwrap();
        // Bin 4 is (p = 3, j = 0): argument -1/3, entry e^{1/18}.
        assert!((r[4].re - (1.0f64 / 18.0).exp()).abs() < 1e-14);
        assert_eq!(r[0], Complex64::ONE);
        assert_eq!(r[8], Complex64::ONE);
        for k in 1..8 {
            assert_eq!(r[16 - k], r[k].conj(), "bin {k}");
        }
    }

    #[test]
    fn multiplier_magnitudes_stay_within_validated_extremes() {
        // The default grid hits every in-band argument for n <= 4096, so
        // 1/m_sup <= |R| <= 1/delta holds to rounding.
        let ws = [
            Window::gaussian(0.1, 0.8).unwrap(),
            Window::tabulated_uniform(
                (0..257)
                    .map(|i| {
                        let xi = grid_point(i, 257);
                        Complex64::new(1.5 + 0.3 * (3.0 * xi).cos(), 0.2 * xi)
                    })
                    .collect(),
            )
            .unwrap(),
        ];
        for w in &ws {
            let fb = validate(w, DEFAULT_GRID).unwrap();
            let r = multiplier(w, 4096).unwrap();
            assert_eq!(r[0], Complex64::ONE);
            assert_eq!(r[2048], Complex64::ONE);
            for (k, z) in r.iter().enumerate() {
                if k == 0 || k == 2048 {
                    continue; // pinned to 1 by convention, not window-derived
                }
                let mag = z.norm();
                assert!(
                    mag >= 1.0 / fb.m_sup - 1e-12 && mag <= 1.0 / fb.delta + 1e-12,
                    "{} bin {k}: |R| = {mag}",
                    w.id()
                );
            }
        }
    }

    #[test]
    fn z_norm_of_boxcar_is_ln_2() {
        let z = z_norm(&Window::boxcar(), DEFAULT_GRID).unwrap();
        assert!((z - LN_2).abs() < 1e-7);
        // Refined grid pins it down further.
        let z = z_norm(&Window::boxcar(), 1_000_001).unwrap();
        assert!((z - LN_2).abs() < 1e-12);
    }

    #[test]
    fn z_norm_scales_quadratically() {
        let base: Vec<Complex64> = (0..129)
            .map(|i| Complex64::new(1.0 + 0.5 * grid_point(i, 129), 0.1))
            .collect();
        let doubled: Vec<Complex64> = base.iter().map(|&z| 2.0 * z).collect();
        let z1 = z_norm(&Window::tabulated_uniform(base).unwrap(), MIN_GRID).unwrap();
        let z2 = z_norm(&Window::tabulated_uniform(doubled).unwrap(), MIN_GRID).unwrap();
        assert!((z2 - 4.0 * z1).abs() < 1e-12);
    }

    #[test]
    fn support_is_left_closed_right_open() {
        let w = Window::gaussian(0.0, 1.0).unwrap();
        let at_left = w.evaluate(-THIRD).unwrap();
        assert_eq!(at_left, w.left_limit());
        assert!(w.evaluate(THIRD).is_err());
        assert_eq!(w.evaluate_supported(THIRD), Complex64::ZERO);
        assert_eq!(w.evaluate_supported(-THIRD - 1e-9), Complex64::ZERO);
        assert!(w.evaluate_supported(THIRD - 1e-9).norm() > 0.9);
        assert_eq!(Window::boxcar().left_limit(), Complex64::ONE);
    }

    #[test]
    fn tabulated_construction_gates() {
        let xi = |g: usize| (0..g).map(|i| grid_point(i, g)).collect::<Vec<_>>();
        // Zero sample.
        let mut vals = vec![Complex64::ONE; 9];
        vals[4] = Complex64::ZERO;
        assert!(matches!(
            Window::tabulated(xi(9), vals),
            Err(Error::ZeroOnSupport { .. })
        ));
        // NaN sample.
        let mut vals = vec![Complex64::ONE; 9];
        vals[2] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(Window::tabulated(xi(9), vals), Err(Error::NonFinite { .. })));
        // Non-increasing grid.
        let mut grid = xi(9);
        grid[5] = grid[4];
        assert!(Window::tabulated(grid, vec![Complex64::ONE; 9]).is_err());
        // Not spanning the support.
        let short: Vec<f64> = (0..9).map(|i| -0.2 + 0.4 * i as f64 / 8.0).collect();
        assert!(Window::tabulated(short, vec![Complex64::ONE; 9]).is_err());
    }

    #[test]
    fn interpolation_is_linear_between_samples() {
        let w = Window::tabulated(
            vec![-THIRD, 0.0, THIRD],
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let mid = w.evaluate(-THIRD / 2.0).unwrap();
        assert!((mid - Complex64::new(1.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn spec_strings_round_trip() {
        assert_eq!(Window::from_spec("boxcar").unwrap().id(), "boxcar");
        let w = Window::from_spec("gaussian:mu=0,sigma=1").unwrap();
        assert_eq!(w.id(), "gaussian:mu=0,sigma=1");
        let w = Window::from_spec("gaussian:sigma=0.5,mu=-0.1").unwrap();
        assert_eq!(w.kind(), &WindowKind::Gaussian { mu: -0.1, sigma: 0.5 });
        for bad in [
            "gauss",
            "gaussian:mu=0",
            "gaussian:mu=0,sigma=0",
            "gaussian:mu=x,sigma=1",
            "gaussian:mu=0,mu=1,sigma=1",
            "",
        ] {
            assert!(Window::from_spec(bad).is_err(), "`{bad}`");
        }
        assert!(matches!(
            Window::from_spec("file:/nonexistent/w.csv"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn validate_enforces_grid_floor() {
        assert_eq!(
            validate(&Window::boxcar(), 64),
            Err(Error::GridTooCoarse(64, MIN_GRID))
        );
    }
}
