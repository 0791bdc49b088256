//! Command-line surface over the transform library: analyze and synthesize
//! signals, export time-frequency matrices and sampled bases, run the
//! slow-oracle verification suite, benchmark the fast path, and report frame
//! bounds. Exit codes: 0 success, 1 validation failure, 2 I/O failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stockwell::adapted::{
    forward_adapted, frame_analysis, inverse_adapted, random_signal, synthesize_adapted_basis,
};
use stockwell::dost::{forward, forward_direct};
use stockwell::dyadic::{nu, partition};
use stockwell::localization::concentration_sweep;
use stockwell::stransform::{redundant_gaussian, redundant_windowed, voice};
use stockwell::windows::{validate, z_norm, DEFAULT_GRID};
use stockwell::{BandIndex, Signal, Window};

use stockwell_cli::io::{self, CliError, CliResult, CoefficientFile};

#[derive(Parser)]
#[command(
    name = "stockwell",
    version,
    about = "Discrete orthonormal Stockwell transforms with window-adapted bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Window spec: boxcar | gaussian:mu=<f>,sigma=<f> | file:<path>
    #[arg(long, global = true)]
    window: Option<String>,

    /// Signal length (power of two, at least 8) for generating commands
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Seed for every pseudo-random draw (ChaCha8)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Signal file format for inputs and outputs
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Bin,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a signal file into a coefficient JSON file
    Analyze {
        /// Signal file (CSV or bin, per --format)
        input: PathBuf,
        /// Divide each band by its root-mean-square multiplier magnitude
        #[arg(long)]
        normalized: bool,
    },
    /// Rebuild the signal described by a coefficient JSON file
    Synthesize {
        /// Coefficient JSON file produced by analyze
        input: PathBuf,
    },
    /// Export the full redundant time-frequency matrix as CSV
    Stransform {
        /// Signal file (CSV or bin, per --format)
        input: PathBuf,
        /// Use the classic Gaussian voices instead of the --window family
        #[arg(long)]
        classic: bool,
    },
    /// Run the slow-oracle checks and report pass/fail per check
    Verify {
        /// Random signals per check
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Time the fast transform against the brute-force oracles
    Bench {
        /// Comma-separated powers of two to measure
        #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192,16384")]
        sizes: Vec<usize>,
        /// Largest n for the quadratic direct oracle column
        #[arg(long, default_value_t = 8192)]
        direct_cap: usize,
        /// Repetitions per measurement (median reported)
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Report window frame bounds and observed Rayleigh quotients
    FrameBounds {
        /// Evaluation grid for the window extremes
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Random signals to sample quotients from
        #[arg(long, default_value_t = 32)]
        trials: usize,
    },
    /// Sample basis functions to CSV rows p,tau,m,re,im
    BasisDump {
        /// Band selector `p` (all translates) or `p:tau`, repeatable
        #[arg(long = "band", required = true, allow_hyphen_values = true)]
        bands: Vec<String>,
        /// Dump the unit-norm family instead of the raw adapted one
        #[arg(long)]
        normalized: bool,
    },
    /// Interval energy concentration per band as CSV
    Concentration {
        /// Largest band ordinal to sweep (from 2)
        #[arg(long, default_value_t = 6)]
        p_max: i32,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(match e {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        });
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let out = cli.out.as_deref();
    let window = || Window::from_spec(cli.window.as_deref().unwrap_or("boxcar"));
    match cli.command {
        Command::Analyze { input, normalized } => {
            let s = read_signal(&input, cli.format)?;
            let c = forward_adapted(&window()?, &s, normalized)?;
            io::emit(out, CoefficientFile::from_adapted(&c).to_json().as_bytes())
        }
        Command::Synthesize { input } => {
            let file = CoefficientFile::from_json(&io::read_text(&input)?)?;
            if let Some(spec) = &cli.window {
                if spec != &file.window {
                    return Err(CliError::Validation(format!(
                        "--window {spec} does not match the file's window {}",
                        file.window
                    )));
                }
            }
            let w = Window::from_spec(&file.window)?;
            let s = inverse_adapted(&w, &file.into_adapted()?)?;
            write_signal(out, &s, cli.format)
        }
        Command::Stransform { input, classic } => {
            let s = read_signal(&input, cli.format)?;
            if s.len() > 4096 {
                return Err(CliError::Validation(format!(
                    "n = {} matrix export is capped at n = 4096 (n*n rows)",
                    s.len()
                )));
            }
            let m = if classic { redundant_gaussian(&s) } else { redundant_windowed(&window()?, &s) };
            let mut text = format!("{}\n", m.n());
            for k in 0..m.n() {
                for (j, z) in m.voice(k).iter().enumerate() {
                    writeln!(text, "{j},{k},{},{}", z.re, z.im).expect("string writes cannot fail");
                }
            }
            io::emit(out, text.as_bytes())
        }
        Command::Verify { trials } => cmd_verify(&window()?, cli.n.unwrap_or(64), cli.seed, trials),
        Command::Bench { sizes, direct_cap, reps } => {
            cmd_bench(out, &window()?, &sizes, direct_cap, reps, cli.seed)
        }
        Command::FrameBounds { grid, trials } => {
            cmd_frame_bounds(out, &window()?, cli.n.unwrap_or(256), grid, trials, cli.seed)
        }
        Command::BasisDump { bands, normalized } => {
            cmd_basis_dump(out, &window()?, cli.n.unwrap_or(64), &bands, normalized)
        }
        Command::Concentration { p_max } => {
            let n = cli.n.unwrap_or(1024);
            let mut text = String::from("p,tau,energy_fraction,norm_fraction\n");
            for rep in concentration_sweep(p_max, n)? {
                writeln!(
                    text,
                    "{},{},{},{}",
                    rep.band.p, rep.band.tau, rep.energy_fraction, rep.norm_fraction
                )
                .expect("string writes cannot fail");
            }
            io::emit(out, text.as_bytes())
        }
    }
}

fn read_signal(path: &std::path::Path, format: Format) -> CliResult<Signal> {
    match format {
        Format::Csv => io::parse_signal_csv(&io::read_text(path)?),
        Format::Bin => io::parse_signal_bin(&io::read_bytes(path)?),
        Format::Json => {
            Err(CliError::Validation("json is a coefficient format, not a signal format".into()))
        }
    }
}

fn write_signal(out: Option<&std::path::Path>, s: &Signal, format: Format) -> CliResult<()> {
    match format {
        Format::Csv => io::emit(out, io::signal_to_csv(s).as_bytes()),
        Format::Bin => io::emit(out, &io::signal_to_bin(s)),
        Format::Json => {
            Err(CliError::Validation("json is a coefficient format, not a signal format".into()))
        }
    }
}

/// The oracle suite: each check prints one line; any failure turns into a
/// validation error after all checks have run.
fn cmd_verify(w: &Window, n: usize, seed: u64, trials: usize) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut report = |name: &str, outcome: Result<String, String>| match outcome {
        Ok(detail) => println!("check {name}: pass ({detail})"),
        Err(detail) => {
            failures += 1;
            println!("check {name}: FAIL ({detail})");
        }
    };

    let max_diff = |a: &[Complex64], b: &[Complex64]| {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    };

    // Fast transform against direct inner products.
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let s = random_signal(&mut rng, n);
        worst = worst.max(max_diff(forward(&s).values(), forward_direct(&s).values()));
    }
    report(
        "fast-vs-direct",
        if worst < 1e-10 {
            Ok(format!("max deviation {worst:.2e}"))
        } else {
            Err(format!("max deviation {worst:.2e} exceeds 1e-10"))
        },
    );

    // Boxcar voices against signed, scaled coefficients on the dyadic grid.
    // This identity belongs to the boxcar window, so it does not use -w.
    let boxcar = Window::boxcar();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let s = random_signal(&mut rng, n);
        let c = forward(&s);
        let layout = partition(n)?;
        for band in
            layout.bands().iter().filter(|b| 2 * b.width <= n / 2 && b.center == nu(b.p))
        {
            let v = voice(&boxcar, &s, band.center.rem_euclid(n as i64) as usize)?;
            for tau in 0..band.width {
                let sign = if tau % 2 == 0 { 1.0 } else { -1.0 };
                let want = sign
                    * (band.width as f64).sqrt()
                    * c.get(BandIndex::new(band.p, tau))?;
                worst = worst.max((v[tau * n / band.width] - want).norm());
            }
        }
    }
    report(
        "grid-identity",
        if worst < 1e-8 {
            Ok(format!("max deviation {worst:.2e}"))
        } else {
            Err(format!("max deviation {worst:.2e} exceeds 1e-8"))
        },
    );

    // Analysis/synthesis roundtrip with the requested window.
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let s = random_signal(&mut rng, n);
        for normalized in [false, true] {
            let back = inverse_adapted(w, &forward_adapted(w, &s, normalized)?)?;
            worst = worst.max(max_diff(back.samples(), s.samples()));
        }
    }
    report(
        "roundtrip",
        if worst < 1e-9 {
            Ok(format!("max deviation {worst:.2e}"))
        } else {
            Err(format!("max deviation {worst:.2e} exceeds 1e-9"))
        },
    );

    // Rayleigh quotients of the unit-norm family against the window bounds.
    report(
        "frame-bounds",
        match frame_analysis(w, n, trials.max(1), seed) {
            Ok(rep) => Ok(format!(
                "quotients [{:.6}, {:.6}] within [{:.6}, {:.6}]",
                rep.min_q, rep.max_q, rep.bounds.lower, rep.bounds.upper
            )),
            Err(e) => Err(e.to_string()),
        },
    );

    if failures > 0 {
        Err(CliError::Validation(format!("{failures} check(s) failed")))
    } else {
        Ok(())
    }
}

fn median_nanos(mut run: impl FnMut(), reps: usize) -> u128 {
    run(); // warm caches and twiddle tables
    let mut times: Vec<u128> = (0..reps)
        .map(|_| {
            let t = Instant::now();
            run();
            t.elapsed().as_nanos()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

fn cmd_bench(
    out: Option<&std::path::Path>,
    w: &Window,
    sizes: &[usize],
    direct_cap: usize,
    reps: usize,
    seed: u64,
) -> CliResult<()> {
    if reps < 5 {
        return Err(CliError::Validation(format!(
            "medians need at least 5 repetitions, got {reps}"
        )));
    }
    for &n in sizes {
        if !n.is_power_of_two() || n < 8 {
            return Err(CliError::Validation(format!(
                "bench sizes must be powers of two >= 8, got {n}"
            )));
        }
    }
    let mut text = String::from("n,t_fast_ns,t_direct_ns,t_redundant_ns\n");
    for &n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_signal(&mut rng, n);
        let fast = median_nanos(|| drop(std::hint::black_box(forward(&s))), reps);
        let direct = (n <= direct_cap)
            .then(|| median_nanos(|| drop(std::hint::black_box(forward_direct(&s))), reps));
        let redundant = (n <= 4096)
            .then(|| median_nanos(|| drop(std::hint::black_box(redundant_windowed(w, &s))), reps));
        let opt = |v: Option<u128>| v.map(|x| x.to_string()).unwrap_or_default();
        writeln!(text, "{n},{fast},{},{}", opt(direct), opt(redundant))
            .expect("string writes cannot fail");
    }
    io::emit(out, text.as_bytes())
}

fn cmd_frame_bounds(
    out: Option<&std::path::Path>,
    w: &Window,
    n: usize,
    grid: usize,
    trials: usize,
    seed: u64,
) -> CliResult<()> {
    let fb = validate(w, grid)?;
    let z = z_norm(w, grid)?;
    let rep = frame_analysis(w, n, trials, seed)?;
    let mut text = String::new();
    writeln!(text, "window: {}", w.id()).expect("string writes cannot fail");
    writeln!(text, "grid: {grid}").expect("string writes cannot fail");
    writeln!(text, "delta: {}", fb.delta).expect("string writes cannot fail");
    writeln!(text, "m_sup: {}", fb.m_sup).expect("string writes cannot fail");
    writeln!(text, "lower: {}", fb.lower).expect("string writes cannot fail");
    writeln!(text, "upper: {}", fb.upper).expect("string writes cannot fail");
    writeln!(text, "z_norm: {z}").expect("string writes cannot fail");
    writeln!(text, "exact quotient range (n = {n}): [{}, {}]", rep.exact_min, rep.exact_max)
        .expect("string writes cannot fail");
    writeln!(text, "observed quotient range ({} trials): [{}, {}]", rep.trials, rep.min_q, rep.max_q)
        .expect("string writes cannot fail");
    io::emit(out, text.as_bytes())
}

fn cmd_basis_dump(
    out: Option<&std::path::Path>,
    w: &Window,
    n: usize,
    bands: &[String],
    normalized: bool,
) -> CliResult<()> {
    let layout = partition(n)?;
    let mut slots: Vec<BandIndex> = Vec::new();
    for selector in bands {
        let (p_text, tau) = match selector.split_once(':') {
            Some((p, tau)) => (p, Some(tau)),
            None => (selector.as_str(), None),
        };
        let p: i32 = p_text.trim().parse().map_err(|_| {
            CliError::Validation(format!("band selector `{selector}` is not `p` or `p:tau`"))
        })?;
        let band = layout.band(p)?;
        match tau {
            Some(t) => {
                let t: usize = t.trim().parse().map_err(|_| {
                    CliError::Validation(format!("band selector `{selector}` is not `p` or `p:tau`"))
                })?;
                if t >= band.width {
                    return Err(CliError::Validation(format!(
                        "tau = {t} is out of range for band {p} (width {})",
                        band.width
                    )));
                }
                slots.push(BandIndex::new(p, t));
            }
            None => slots.extend((0..band.width).map(|t| BandIndex::new(p, t))),
        }
    }
    let mut text = String::from("p,tau,m,re,im\n");
    for idx in slots {
        let f = synthesize_adapted_basis(w, idx, n, normalized)?;
        for (m, z) in f.samples().iter().enumerate() {
            writeln!(text, "{},{},{m},{},{}", idx.p, idx.tau, z.re, z.im)
                .expect("string writes cannot fail");
        }
    }
    io::emit(out, text.as_bytes())
}
