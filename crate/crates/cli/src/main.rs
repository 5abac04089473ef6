use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monoid_census_cli as lib;
use monoid_census_cli::verify::{run_all, VerifyConfig};

/// Trace census of the monoid generated by [[1,0],[1,1]] and [[1,1],[0,1]],
/// with the companion quadratic-irrational catalogs and diagnostics.
#[derive(Parser)]
#[command(name = "monoid-census", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<OutFormat> for lib::Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => lib::Format::Csv,
            OutFormat::Json => lib::Format::Json,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (all cores when omitted).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the census table: psi_ev, psi_odd, psi, phi and main-term
    /// residuals for every N up to the bound.
    Census {
        /// Largest trace N (>= 3).
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the S_N / C_N diagnostic series.
    Figures {
        /// Largest N (>= 3).
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the catalog of reduced quadratic irrationals.
    Quadratics {
        /// Include units with fundamental trace u0 <= this bound.
        #[arg(long, conflicts_with = "x_bound")]
        trace_bound: Option<u64>,
        /// Include units with length rho < this bound (selects the trace
        /// cut e^{x/2} + e^{-x/2}).
        #[arg(long)]
        x_bound: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification suite and print a pass/fail table.
    Verify {
        /// Brute-force equivalence range.
        #[arg(long, default_value_t = 500)]
        n_max: u64,
        /// Relative tolerance of the main-term ratio check.
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        /// Trace bound of the quadratic checks.
        #[arg(long, default_value_t = 2000)]
        trace_bound: u64,
        /// Worker threads (all cores when omitted).
        #[arg(long)]
        threads: Option<usize>,
        /// Negative control: offset the c2 constant so the ratio check must
        /// fail. For testing the suite itself.
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb_c2: f64,
    },
}

fn open_output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn set_threads(threads: Option<usize>) -> anyhow::Result<()> {
    if let Some(t) = threads {
        anyhow::ensure!(t >= 1, "threads must be >= 1");
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    Ok(())
}

/// Argument rejection (exit 2), as opposed to runtime failure (exit 1).
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl UsageError {
    fn err<T>(msg: impl Into<String>) -> anyhow::Result<T> {
        Err(anyhow::Error::new(UsageError(msg.into())))
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Census { n_max, output } => {
            if n_max < 3 {
                return UsageError::err("n-max must be ≥ 3");
            }
            set_threads(output.threads)?;
            let report = lib::census_report(n_max)?;
            let mut out = open_output(&output.out)?;
            lib::write_census(&report, output.format.into(), &mut out)?;
            out.flush()?;
        }
        Command::Figures { n_max, output } => {
            if n_max < 3 {
                return UsageError::err("n-max must be ≥ 3");
            }
            set_threads(output.threads)?;
            let rows = lib::figure_rows(n_max)?;
            let mut out = open_output(&output.out)?;
            lib::write_figures(&rows, output.format.into(), &mut out)?;
            out.flush()?;
        }
        Command::Quadratics { trace_bound, x_bound, output } => {
            let bound = match (trace_bound, x_bound) {
                (Some(t), None) => t,
                (None, Some(x)) => {
                    if !(x > 0.0) {
                        return UsageError::err("x-bound must be > 0");
                    }
                    let y = (x / 2.0).exp();
                    (y + 1.0 / y).floor() as u64
                }
                (None, None) => {
                    return UsageError::err("one of --trace-bound or --x-bound is required")
                }
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            set_threads(output.threads)?;
            let rows = lib::quadratic_rows(bound)?;
            let mut out = open_output(&output.out)?;
            lib::write_quadratics(&rows, output.format.into(), &mut out)?;
            out.flush()?;
        }
        Command::Verify { n_max, tol, trace_bound, threads, perturb_c2 } => {
            if n_max < 3 {
                return UsageError::err("n-max must be ≥ 3");
            }
            if !(tol > 0.0) {
                return UsageError::err("tol must be > 0");
            }
            set_threads(threads)?;
            let cfg = VerifyConfig {
                oracle_n: n_max,
                quad_bound: trace_bound,
                tol,
                perturb_c2,
                ..VerifyConfig::default()
            };
            let results = run_all(&cfg);
            let mut failed = false;
            for r in &results {
                println!("{}", r.line());
                failed |= !r.passed;
            }
            if failed {
                anyhow::bail!("verification failed");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
