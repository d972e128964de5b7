//! `cheq`: command-line front end for the confluent-heun crate.
//!
//! Exit codes: 0 success, 1 domain error (the computation itself failed or
//! found nothing it could report), 2 usage error. The `CHEQ_THREADS`
//! environment variable caps the worker threads used by `demkov`.

mod commands;
mod format;
mod rational;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use rational::parse_rational;

#[derive(Parser, Debug)]
#[command(name = "cheq", version, about = "Quasi-exactly solvable confluent Heun equation toolkit")]
struct Cli {
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the degree n with α = -n ε, or "not QES".
    QesCheck(QesCheckArgs),
    /// Critical polynomials, spectral roots and polynomial solutions (JSON).
    Poly(PolyArgs),
    /// Elementary two-center eigenfunctions (JSON), optionally a density grid (CSV).
    Demkov(DemkovArgs),
    /// Sampled Schrödinger potential of a QES instance (CSV).
    Potential(PotentialArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct QesCheckArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    alpha: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    epsilon: BigRational,
    /// Accepted for completeness; QES-ness does not depend on it.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    gamma: Option<BigRational>,
    /// Accepted for completeness; QES-ness does not depend on it.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    delta: Option<BigRational>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct PolyArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    gamma: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    delta: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    epsilon: BigRational,
    #[arg(long, short)]
    n: usize,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct DemkovArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    z1: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    z2: BigRational,
    /// 2 or 3.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=3))]
    dim: u32,
    /// Largest n1, n2 to enumerate.
    #[arg(long, default_value_t = 4)]
    n_max: u32,
    /// Keep only these radial quantum numbers.
    #[arg(long)]
    n1: Option<u32>,
    /// Keep only these angular quantum numbers.
    #[arg(long)]
    n2: Option<u32>,
    /// Keep only this azimuthal number (3D).
    #[arg(long)]
    m: Option<u32>,
    /// Write the probability density of one solution to this CSV file.
    #[arg(long)]
    density: Option<PathBuf>,
    /// Which solution (0-based, in output order) to sample.
    #[arg(long, default_value_t = 0)]
    solution: usize,
    /// Half-width of the cubic density grid.
    #[arg(long, default_value_t = 3.0)]
    half_width: f64,
    /// Points per axis of the density grid.
    #[arg(long, default_value_t = 61)]
    points: usize,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct PotentialArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    gamma: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    delta: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    epsilon: BigRational,
    #[arg(long, short)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    q: BigRational,
    #[arg(long, default_value_t = 0.05)]
    x_min: f64,
    #[arg(long, default_value_t = 3.0)]
    x_max: f64,
    #[arg(long, default_value_t = 60)]
    points: usize,
}

/// How a run ended, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("CHEQ_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("CHEQ_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let out = cli.output.as_deref();
    let result = match cli.command {
        Command::QesCheck(a) => commands::qes_check(&a.alpha, &a.epsilon, out),
        Command::Poly(a) => commands::poly(&a.gamma, &a.delta, &a.epsilon, a.n, out),
        Command::Demkov(a) => commands::demkov(&a, out),
        Command::Potential(a) => commands::potential(&a, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
