//! Dyadic band geometry on the DFT frequency axis.
//!
//! Frequencies are grouped into octaves: width-one bands at 0 and ±1, then
//! band p with |p| >= 2 covering the 2^{|p|-1} bins from beta(p) up to
//! 2*beta(p) - 1 (negated for p < 0). [`partition`] lays the bands of an
//! n-point grid out in the canonical coefficient order used by every
//! transform in this crate: positive bands ascending, the Nyquist singleton,
//! then negative bands descending from p = -1.

use crate::error::{check_length, Error, Result};

/// Band width beta(p): 1 for |p| <= 1, otherwise 2^{|p|-1}.
pub fn beta(p: i32) -> usize {
    let a = p.unsigned_abs();
    if a <= 1 {
        1
    } else {
        1usize << (a - 1)
    }
}

/// Center frequency nu(p): 0 at DC, ±1 on the fundamental, ±3·2^{|p|-2}
/// (the midpoint (3/2)·beta(p) of the bin range) for |p| >= 2.
pub fn nu(p: i32) -> i64 {
    let a = p.unsigned_abs();
    let mag: i64 = match a {
        0 => 0,
        1 => 1,
        _ => 3 * (1i64 << (a - 2)),
    };
    if p < 0 {
        -mag
    } else {
        mag
    }
}

/// One slot of a [`BandPartition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    /// Signed ordinal. Positive bands run 0..=log2(n)-1, the Nyquist
    /// singleton carries p = log2(n), negative bands run -1..=-(log2(n)-1).
    pub p: i32,
    /// Number of DFT bins (and coefficients) in the band. Equals beta(p)
    /// except on the Nyquist singleton, where it is 1.
    pub width: usize,
    /// Center frequency: nu(p), or n/2 on the Nyquist singleton.
    pub center: i64,
    /// Start of this band's run in the flat coefficient layout.
    pub offset: usize,
}

impl Band {
    /// DFT bin holding the j-th frequency of the band, 0 <= j < width.
    /// Positive bands ascend from beta(p); negative bands hold frequencies
    /// -(beta+j), i.e. bins descending from n - beta.
    pub fn bin(&self, j: usize, n: usize) -> usize {
        debug_assert!(j < self.width);
        if self.p == 0 {
            0
        } else if self.width == 1 && self.center as usize == n / 2 {
            n / 2
        } else if self.p > 0 {
            beta(self.p) + j
        } else {
            n - beta(self.p) - j
        }
    }
}

/// The complete dyadic layout of an n-point frequency grid.
///
/// Bins 0..n/2-1 are covered by bands p = 0..log2(n)-1, bin n/2 by the
/// Nyquist singleton, bins n/2+1..n-1 by bands p = -1..-(log2(n)-1).
/// Widths sum to n, so the flat coefficient array is also length n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandPartition {
    n: usize,
    bands: Vec<Band>,
    nyquist_slot: usize,
}

impl BandPartition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bands in canonical layout order.
    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// Index into [`Self::bands`] of the Nyquist singleton.
    pub fn nyquist_slot(&self) -> usize {
        self.nyquist_slot
    }

    /// Look up a band by ordinal.
    pub fn band(&self, p: i32) -> Result<&Band> {
        self.bands
            .iter()
            .find(|b| b.p == p)
            .ok_or(Error::InvalidBand { p, tau: 0, n: self.n })
    }

    /// Position of coefficient (p, tau) in the flat layout.
    pub fn flat_index(&self, p: i32, tau: usize) -> Result<usize> {
        let band = self.band(p)?;
        if tau < band.width {
            Ok(band.offset + tau)
        } else {
            Err(Error::InvalidBand { p, tau, n: self.n })
        }
    }
}

/// Build the canonical dyadic layout for an n-point grid.
pub fn partition(n: usize) -> Result<BandPartition> {
    let log2n = check_length(n)? as i32;
    let mut bands = Vec::with_capacity(2 * log2n as usize);
    let mut offset = 0;
    for p in 0..log2n {
        let width = beta(p);
        bands.push(Band { p, width, center: nu(p), offset });
        offset += width;
    }
    debug_assert_eq!(offset, n / 2);
    let nyquist_slot = bands.len();
    bands.push(Band { p: log2n, width: 1, center: (n / 2) as i64, offset });
    offset += 1;
    for p in 1..log2n {
        let width = beta(-p);
        bands.push(Band { p: -p, width, center: nu(-p), offset });
        offset += width;
    }
    debug_assert_eq!(offset, n);
    Ok(BandPartition { n, bands, nyquist_slot })
}

/// Map a DFT bin to its (p, j) coordinates: j is the position within the
/// band, so k = beta(p) + j for positive p, k = n - beta(|p|) - j for
/// negative p (bins above n/2 are negative frequencies), and bin n/2 is
/// (log2(n), 0), the Nyquist singleton.
pub fn band_of_frequency(k: usize, n: usize) -> Result<(i32, usize)> {
    let log2n = check_length(n)? as i32;
    if k >= n {
        return Err(Error::InvalidBand { p: 0, tau: k, n });
    }
    if k == 0 {
        return Ok((0, 0));
    }
    if k == n / 2 {
        return Ok((log2n, 0));
    }
    // |frequency| and its sign; f is in 1..n/2-1 after folding.
    let (f, sign) = if k < n / 2 { (k, 1) } else { (n - k, -1) };
    let p = f.ilog2() as i32 + 1;
    let j = f - beta(p);
    Ok((sign * p, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_table() {
        assert_eq!(beta(0), 1);
        assert_eq!(beta(1), 1);
        assert_eq!(beta(-1), 1);
        assert_eq!(beta(2), 2);
        assert_eq!(beta(5), 16);
        assert_eq!(beta(-3), 4);
    }

    #[test]
    fn center_table() {
        assert_eq!(nu(0), 0);
        assert_eq!(nu(1), 1);
        assert_eq!(nu(-1), -1);
        assert_eq!(nu(2), 3);
        assert_eq!(nu(-2), -3);
        assert_eq!(nu(5), 24);
    }

    #[test]
    fn band_endpoints_are_consecutive_octaves() {
        // Band p covers [beta(p), 2 beta(p) - 1]; the next band starts
        // exactly one past the last bin, and the center splits the band 1:2.
        for p in 1..=20 {
            assert_eq!(2 * beta(p), beta(p + 1));
            if p >= 2 {
                assert_eq!(nu(p), (3 * beta(p) / 2) as i64);
            }
        }
    }

    #[test]
    fn layout_16() {
        let part = partition(16).unwrap();
        let widths: Vec<usize> = part.bands().iter().map(|b| b.width).collect();
        assert_eq!(widths, [1, 1, 2, 4, 1, 1, 2, 4]);
        let ps: Vec<i32> = part.bands().iter().map(|b| b.p).collect();
        assert_eq!(ps, [0, 1, 2, 3, 4, -1, -2, -3]);
        let offsets: Vec<usize> = part.bands().iter().map(|b| b.offset).collect();
        assert_eq!(offsets, [0, 1, 2, 4, 8, 9, 10, 12]);
        assert_eq!(part.nyquist_slot(), 4);
        assert_eq!(part.bands()[part.nyquist_slot()].center, 8);
    }

    #[test]
    fn layout_8() {
        let part = partition(8).unwrap();
        let widths: Vec<usize> = part.bands().iter().map(|b| b.width).collect();
        assert_eq!(widths, [1, 1, 2, 1, 1, 2]);
    }

    #[test]
    fn rejects_bad_lengths() {
        for n in [0, 1, 4, 6, 12, 100] {
            assert_eq!(partition(n), Err(Error::InvalidLength(n)));
        }
    }

    #[test]
    fn frequency_lookup() {
        assert_eq!(band_of_frequency(6, 16).unwrap(), (3, 2));
        assert_eq!(band_of_frequency(0, 16).unwrap(), (0, 0));
        assert_eq!(band_of_frequency(15, 16).unwrap(), (-1, 0));
        assert_eq!(band_of_frequency(8, 16).unwrap(), (4, 0));
        assert_eq!(band_of_frequency(13, 16).unwrap(), (-2, 1));
    }

    #[test]
    fn frequency_lookup_is_a_bijection() {
        // Composing the lookup with the layout offsets must permute 0..n,
        // and it must agree with Band::bin in both directions.
        let mut n = 8;
        while n <= 4096 {
            let part = partition(n).unwrap();
            let mut seen = vec![false; n];
            for k in 0..n {
                let (p, j) = band_of_frequency(k, n).unwrap();
                let idx = part.flat_index(p, j).unwrap();
                assert!(!seen[idx], "flat index {idx} hit twice at n = {n}");
                seen[idx] = true;
                assert_eq!(part.band(p).unwrap().bin(j, n), k);
            }
            assert!(seen.iter().all(|&s| s));
            n *= 2;
        }
    }

    #[test]
    fn root_of_unity_sums_cancel() {
        // Sum of e^{-2πi j m / beta} over a full period vanishes unless
        // beta divides m; this is what collapses cross-band inner products.
        for k in 1..=10u32 {
            let beta = 1usize << k;
            for m in 1..beta {
                let mut re = 0.0;
                let mut im = 0.0;
                for j in 0..beta {
                    let ang = -std::f64::consts::TAU * (j * m) as f64 / beta as f64;
                    re += ang.cos();
                    im += ang.sin();
                }
                assert!(re.abs() < 1e-9 && im.abs() < 1e-9, "beta {beta} m {m}");
            }
        }
    }
}
