use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qlens_cli::checks::{self, Job, RepsParams};
use qlens_cli::report::Report;

#[derive(Parser, Debug)]
#[command(name = "qlens", version, about = "Verification campaigns for quantum lens spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(short = 'o', long = "output", value_name = "FILE", global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized campaigns.
    #[arg(long, env = "QLENS_SEED", default_value_t = 42, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Top,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Run a verification campaign.
    Check {
        #[command(subcommand)]
        which: Check,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Power, commutation and Q identities, confluence, multiplicativity.
    Identities {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
    /// Lens relations, basis closure, generators, gluing maps, Heegaard reduction, gauges.
    Lens {
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2, 3])]
        beta: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Translation map, kernel intersection, entwining and kernel factorization.
    Galois {
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2, 3])]
        beta: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Truncated operator representations and the faithfulness Gram rank.
    Reps {
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        q: f64,
        /// Angle: `sqrt2` or a decimal literal.
        #[arg(long, value_parser = parse_theta, default_value = "sqrt2")]
        theta: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2, 3])]
        beta: Vec<u32>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Covers, gluing and exact-sequence campaigns.
    Cover {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Every campaign with default parameters.
    All,
}

fn parse_theta(s: &str) -> Result<f64, String> {
    if s == "sqrt2" {
        return Ok(std::f64::consts::SQRT_2);
    }
    let v: f64 = s.parse().map_err(|_| format!("expected `sqrt2` or a decimal, got `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("angle must be finite, got `{s}`"))
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let Top::Check { which } = cli.command;
    let jobs: Vec<Job> = match which {
        Check::Identities { n_max } => checks::identities(n_max, seed),
        Check::Lens { beta, degree } => checks::lens(&beta, degree, seed),
        Check::Galois { beta, n_max, degree } => checks::galois(&beta, n_max, degree, seed),
        Check::Reps { dim, p, q, theta, beta, tol } => {
            let params = RepsParams { dim, p, q, theta, betas: beta, tol };
            if let Err(e) = checks::validate_reps(&params) {
                return usage_error(&e.to_string());
            }
            checks::reps(&params)
        }
        Check::Cover { trials } => checks::cover(trials, seed),
        Check::All => {
            let mut jobs = checks::identities(8, seed);
            jobs.extend(checks::lens(&[0, 1, 2, 3], 6, seed));
            jobs.extend(checks::galois(&[0, 1, 2, 3], 4, 4, seed));
            jobs.extend(checks::reps(&RepsParams::default()));
            jobs.extend(checks::cover(100, seed));
            jobs
        }
    };
    let report = Report::new(seed, checks::run_jobs(jobs));
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
