//! End-to-end guarantees of the library, one test per headline claim, each
//! with its stated tolerance and (where relevant) a wall-clock budget. Run
//! with `cargo test --test acceptance -- --show-output` to see the verdict
//! lines.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use stockwell::adapted::{
    dual_analysis, frame_analysis, random_signal, synthesize_adapted_basis,
};
use stockwell::dost::{forward, forward_direct, inverse, synthesize_basis};
use stockwell::dyadic::{nu, partition};
use stockwell::localization::concentration_sweep;
use stockwell::spectrum::{idft, Spectrum};
use stockwell::stransform::{redundant_windowed, voice};
use stockwell::{BandIndex, Signal, Window};

use rand::SeedableRng;

const TAU: f64 = std::f64::consts::TAU;

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    match body() {
        Ok(()) => println!("acceptance {name}: pass ({:.2?})", started.elapsed()),
        Err(msg) => {
            println!("acceptance {name}: FAIL: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($arg)+)),
        }
    };
}

fn seeded(seed: u64, n: usize) -> Signal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_signal(&mut rng, n)
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn all_slots(n: usize) -> Vec<BandIndex> {
    partition(n)
        .unwrap()
        .bands()
        .iter()
        .flat_map(|band| (0..band.width).map(|tau| BandIndex::new(band.p, tau)))
        .collect()
}

#[test]
fn c01_orthonormal_basis() {
    criterion("01 orthonormality (n=64 Gram matrix)", || {
        let start = Instant::now();
        let n = 64;
        let basis: Vec<Vec<Complex64>> = all_slots(n)
            .into_iter()
            .map(|b| synthesize_basis(b, n).unwrap().into_samples())
            .collect();
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let gram: Complex64 =
                    u.iter().zip(v).map(|(x, y)| x * y.conj()).sum::<Complex64>() / n as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                let err = (gram - want).norm();
                check!(err < 1e-10, "slots ({a}, {b}): deviation {err:.3e}");
            }
        }
        check!(start.elapsed() < Duration::from_secs(1), "exceeded the 1 s budget");
        Ok(())
    });
}

#[test]
fn c02_fast_matches_direct() {
    criterion("02 fast forward vs direct inner products", || {
        let start = Instant::now();
        for n in [16, 64, 256] {
            for seed in 0..20 {
                let s = seeded(seed, n);
                let fast = forward(&s);
                let slow = forward_direct(&s);
                let err = max_diff(fast.values(), slow.values());
                check!(err < 1e-10, "n = {n}, seed {seed}: deviation {err:.3e}");
            }
        }
        check!(start.elapsed() < Duration::from_secs(5), "exceeded the 5 s budget");
        Ok(())
    });
}

#[test]
fn c03_perfect_reconstruction() {
    criterion("03 roundtrip reconstruction (n up to 4096)", || {
        let start = Instant::now();
        let w = Window::gaussian(0.0, 1.0).unwrap();
        let mut n = 8;
        while n <= 4096 {
            let s = seeded(n as u64, n);
            let norm = s.energy().sqrt();
            let back = inverse(&forward(&s));
            let plain =
                max_diff(back.samples(), s.samples()) / norm;
            check!(plain < 1e-9, "plain roundtrip n = {n}: relative error {plain:.3e}");
            for normalized in [false, true] {
                let c = stockwell::adapted::forward_adapted(&w, &s, normalized)
                    .map_err(|e| e.to_string())?;
                let back = stockwell::adapted::inverse_adapted(&w, &c)
                    .map_err(|e| e.to_string())?;
                let rel = max_diff(back.samples(), s.samples()) / norm;
                check!(
                    rel < 1e-9,
                    "adapted roundtrip n = {n}, normalized = {normalized}: {rel:.3e}"
                );
            }
            n *= 2;
        }
        check!(start.elapsed() < Duration::from_secs(10), "exceeded the 10 s budget");
        Ok(())
    });
}

#[test]
fn c04_sampling_deltas() {
    criterion("04 basis sampling deltas (widths up to 32)", || {
        let n = 128;
        for band in partition(n).unwrap().bands() {
            for tau in 0..band.width {
                let d = synthesize_basis(BandIndex::new(band.p, tau), n).unwrap();
                let root = (band.width as f64).sqrt();
                for tau_prime in 0..band.width {
                    let at = tau_prime * n / band.width;
                    let want = if tau == tau_prime { root } else { 0.0 };
                    let err = (d.samples()[at] - want).norm();
                    check!(
                        err < 1e-9,
                        "p = {}, tau = {tau}, sample {tau_prime}: deviation {err:.3e}",
                        band.p
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c05_boxcar_voice_grid_identity() {
    criterion("05 boxcar voice equals signed coefficients on the grid", || {
        let w = Window::boxcar();
        for n in [16usize, 32, 64] {
            let s = seeded(100 + n as u64, n);
            let c = forward(&s);
            let layout = partition(n).unwrap();
            for band in layout
                .bands()
                .iter()
                .filter(|b| 2 * b.width <= n / 2 && b.center == nu(b.p))
            {
                let k = band.center.rem_euclid(n as i64) as usize;
                let v = voice(&w, &s, k).map_err(|e| e.to_string())?;
                for tau in 0..band.width {
                    let got = v[tau * n / band.width];
                    let sign = if tau % 2 == 0 { 1.0 } else { -1.0 };
                    let want = sign
                        * (band.width as f64).sqrt()
                        * c.get(BandIndex::new(band.p, tau)).unwrap();
                    let err = (got - want).norm();
                    check!(
                        err < 1e-8,
                        "n = {n}, p = {}, tau = {tau}: deviation {err:.3e}",
                        band.p
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c06_cross_band_vanishing() {
    criterion("06 out-of-band voices vanish", || {
        let n = 64;
        let w = Window::boxcar();
        let layout = partition(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for p in [2i32, 3, 4] {
            let k = nu(p) as usize;
            for other in layout.bands().iter().filter(|b| b.p != p) {
                let mut bins = vec![Complex64::ZERO; n];
                let noise = random_signal(&mut rng, n);
                for j in 0..other.width {
                    bins[other.bin(j, n)] = noise.samples()[j];
                }
                let s = idft(&Spectrum::new(bins).unwrap());
                let v = voice(&w, &s, k).map_err(|e| e.to_string())?;
                let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
                check!(
                    peak < 1e-10,
                    "voice at band {p} hears band {}: peak {peak:.3e}",
                    other.p
                );
            }
        }
        Ok(())
    });
}

#[test]
fn c07_concentration() {
    criterion("07 interval concentration above 0.85", || {
        let start = Instant::now();
        let reports = concentration_sweep(8, 4096).map_err(|e| e.to_string())?;
        for rep in &reports {
            check!(
                rep.norm_fraction > 0.85,
                "band {}, tau = {}: norm fraction {:.4}",
                rep.band.p,
                rep.band.tau,
                rep.norm_fraction
            );
        }
        check!(start.elapsed() < Duration::from_secs(5), "exceeded the 5 s budget");
        Ok(())
    });
}

#[test]
fn c08_frame_bounds() {
    criterion("08 frame bounds hold over random signals", || {
        let w = Window::gaussian(0.0, 1.0).unwrap();
        let report = frame_analysis(&w, 256, 100, 8).map_err(|e| e.to_string())?;
        let lower = (-1.0f64 / 9.0).exp();
        let upper = (1.0f64 / 9.0).exp();
        check!(
            (report.bounds.lower - lower).abs() < 1e-12,
            "lower bound {} is not e^(-1/9)",
            report.bounds.lower
        );
        check!(
            (report.bounds.upper - upper).abs() < 1e-12,
            "upper bound {} is not e^(1/9)",
            report.bounds.upper
        );
        check!(
            report.min_q >= lower - 1e-9 && report.max_q <= upper + 1e-9,
            "quotients [{}, {}] escape [{lower}, {upper}]",
            report.min_q,
            report.max_q
        );
        let tight = frame_analysis(&Window::boxcar(), 256, 100, 8).map_err(|e| e.to_string())?;
        check!(
            (tight.min_q - 1.0).abs() < 1e-10 && (tight.max_q - 1.0).abs() < 1e-10,
            "boxcar quotients [{}, {}] are not identically 1",
            tight.min_q,
            tight.max_q
        );
        Ok(())
    });
}

#[test]
fn c09_adapted_identity_under_oracle() {
    criterion("09 windowed oracle reproduces the modulated basis", || {
        let n = 64;
        let w = Window::gaussian(0.0, 1.0).unwrap();
        for p in [2i32, 3, 4] {
            let freq = nu(p);
            let width = partition(n).unwrap().band(p).unwrap().width;
            for tau in 0..width {
                let idx = BandIndex::new(p, tau);
                let e = synthesize_adapted_basis(&w, idx, n, false).map_err(|x| x.to_string())?;
                let m = redundant_windowed(&w, &e);
                let d = synthesize_basis(idx, n).unwrap();
                for j in 0..n {
                    let b = j as f64 / n as f64;
                    let want = Complex64::cis(-TAU * b * freq as f64) * d.samples()[j];
                    let got = m.get(j, freq as usize);
                    let err = (got - want).norm();
                    check!(
                        err < 1e-8,
                        "p = {p}, tau = {tau}, sample {j}: deviation {err:.3e}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c10_complexity_scaling() {
    criterion("10 near-linear scaling of the fast transform", || {
        fn median_seconds(mut run: impl FnMut(), reps: usize) -> f64 {
            run(); // warm caches and FFT twiddle tables
            let mut times: Vec<f64> = (0..reps)
                .map(|_| {
                    let t = Instant::now();
                    run();
                    t.elapsed().as_secs_f64()
                })
                .collect();
            times.sort_by(f64::total_cmp);
            times[times.len() / 2]
        }

        let sizes: Vec<usize> = (14..=19).map(|k| 1usize << k).collect();
        let mut medians = Vec::new();
        for &n in &sizes {
            let s = seeded(n as u64, n);
            medians.push(median_seconds(|| { std::hint::black_box(forward(&s)); }, 9));
        }
        for (pair, ratio) in medians.windows(2).map(|w| w[1] / w[0]).enumerate() {
            check!(
                ratio <= 2.6,
                "doubling {} -> {} scaled by {ratio:.2}",
                sizes[pair],
                sizes[pair + 1]
            );
        }

        let n = 4096;
        let s = seeded(n as u64, n);
        let fast = median_seconds(|| { std::hint::black_box(forward(&s)); }, 9);
        let w = Window::boxcar();
        let slow = median_seconds(|| { std::hint::black_box(redundant_windowed(&w, &s)); }, 3);
        check!(
            fast < slow / 50.0,
            "fast {fast:.2e} s is not 50x under the redundant oracle {slow:.2e} s"
        );
        Ok(())
    });
}

#[test]
fn c11_dual_frame_reconstruction() {
    criterion("11 dual-frame analysis reconstructs through the primal family", || {
        let n = 64;
        let w = Window::gaussian(0.0, 1.0).unwrap();
        let slots = all_slots(n);
        let family: Vec<Vec<Complex64>> = slots
            .iter()
            .map(|&b| synthesize_adapted_basis(&w, b, n, true).unwrap().into_samples())
            .collect();
        for seed in 0..20 {
            let s = seeded(1100 + seed, n);
            let dual = dual_analysis(&w, &s).map_err(|e| e.to_string())?;
            let mut out = vec![Complex64::ZERO; n];
            for (&b, f) in slots.iter().zip(&family) {
                let coef = dual.get(b).unwrap();
                for (o, v) in out.iter_mut().zip(f) {
                    *o += coef * v;
                }
            }
            let err = max_diff(&out, s.samples());
            check!(err < 1e-9, "seed {seed}: deviation {err:.3e}");
        }
        Ok(())
    });
}
