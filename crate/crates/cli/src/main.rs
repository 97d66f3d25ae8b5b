use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geowb_cli::config::{ExperimentConfig, Format};
use geowb_cli::run::{run, CliError};

/// Hyperbolic surfaces: spectra, systoles, Markov triples.
#[derive(Parser)]
#[command(name = "geowb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed (or with --simple, simple closed) geodesics up to a cutoff.
    Spectrum(Flags),
    /// Systole maximization: --surface torus --boundary B, or --surface genus2.
    Extremal(Flags),
    /// SVG of simple geodesics folded into a fundamental polygon.
    Plot(Flags),
    /// Markov triples up to --bound, optionally matched with the modular torus.
    Markov(Flags),
    /// Upper bound on the Bers constant from single flips.
    Bers(Flags),
    /// Growth of the number of closed geodesics against e^L / L.
    Huber(Flags),
    /// Root of the quintic for the genus-2 Bers constant.
    Gendulphe(Flags),
}

#[derive(Args)]
struct Flags {
    /// `key = value` file; flags override it.
    #[arg(long)]
    config: Option<String>,
    /// modular-torus, torus:L,T,B, genus2:L1,L2,L3,T1,T2,T3, a surface file;
    /// for extremal: torus or genus2.
    #[arg(long)]
    surface: Option<String>,
    #[arg(long)]
    cutoff: Option<f64>,
    /// Search nodes for spectra, random starts for the genus-2 search.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Only simple geodesics (one-holed tori).
    #[arg(long)]
    simple: bool,
    #[arg(long)]
    boundary: Option<f64>,
    #[arg(long)]
    bound: Option<u64>,
    /// Match Markov numbers up to this bound with the modular torus spectrum.
    #[arg(long)]
    correspond: Option<u64>,
    /// Curves at most this many Vieta moves (minus one) from the sink.
    #[arg(long)]
    slope_bound: Option<u64>,
    /// Points per drawn chord.
    #[arg(long)]
    resolution: Option<u64>,
}

fn configure(name: &str, f: Flags) -> Result<ExperimentConfig, CliError> {
    let mut base = ExperimentConfig { command: name.to_string(), ..Default::default() };
    if let Some(path) = &f.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        let file = ExperimentConfig::parse(&text).map_err(CliError::Usage)?;
        if !file.command.is_empty() && file.command != name {
            return Err(CliError::Usage(format!("config is for `{}`, not `{name}`", file.command)));
        }
        base = file;
    }
    let flags = ExperimentConfig {
        command: name.to_string(),
        surface: f.surface,
        cutoff: f.cutoff,
        budget: f.budget,
        seed: f.seed,
        out: f.out,
        format: f.format,
        simple: f.simple.then_some(true),
        boundary: f.boundary,
        bound: f.bound,
        correspond: f.correspond,
        slope_bound: f.slope_bound,
        resolution: f.resolution,
    };
    base.overridden_by(&flags).resolve().map_err(CliError::Usage)
}

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("GEOWB_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!("GEOWB_THREADS must be a positive integer, got `{v}`"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main_inner(cli: Cli) -> Result<bool, CliError> {
    threads()?;
    let (name, flags) = match cli.command {
        Command::Spectrum(f) => ("spectrum", f),
        Command::Extremal(f) => ("extremal", f),
        Command::Plot(f) => ("plot", f),
        Command::Markov(f) => ("markov", f),
        Command::Bers(f) => ("bers", f),
        Command::Huber(f) => ("huber", f),
        Command::Gendulphe(f) => ("gendulphe", f),
    };
    let cfg = configure(name, flags)?;
    let out = run(&cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &out.body).map_err(|e| CliError::Usage(format!("{path}: {e}")))?,
        None => print!("{}", out.body),
    }
    Ok(!out.inconclusive)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("inconclusive: search budget exhausted before the tolerance was met");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
