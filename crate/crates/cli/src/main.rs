//! `haarnet` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a usage or validation error (one-line
//! diagnostic on stderr), 2 when a `verify` or `sweep` check fails. The
//! report is written before exiting with 2.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use haarnet::haar::haar_forward_2d;
use haarnet::verify::{
    run_sweep, verify_function, SweepConfig, VerificationReport, DEFAULT_CONFIG,
};
use haarnet::{Exponent, ExponentPair, FamilySpec, NetMaximalTable, NormReport};

#[derive(Debug, Parser)]
#[command(
    name = "haarnet",
    version,
    about = "Double Fourier-Haar series, mixed-norm and net-space norms"
)]
struct Cli {
    /// Worker threads for parallel kernels; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Haar coefficients of a family function as k1,k2,j1,j2,value records.
    Transform {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Keep exact-zero coefficients.
        #[arg(long)]
        all: bool,
    },
    /// Mixed Lebesgue, net and coefficient-sequence norms.
    Norm {
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        exponents: ExponentArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Per-size rectangle maxima and the maximal function table.
    Netmax {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Theorem ratios and endpoint bounds for one function.
    Verify {
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        exponents: ExponentArgs,
    },
    /// Configured sweep over families, exponents and levels.
    Sweep {
        /// TOML sweep configuration; the bundled default when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Args)]
struct FunctionArgs {
    /// Family spec, e.g. `tensor_power:alpha=0.25,beta=0.25,level=6`.
    #[arg(long)]
    family: String,
}

impl FunctionArgs {
    fn spec(&self) -> Result<FamilySpec> {
        self.family
            .parse()
            .with_context(|| format!("--family {}", self.family))
    }
}

#[derive(Debug, Args)]
struct ExponentArgs {
    #[arg(long)]
    p1: f64,
    #[arg(long)]
    p2: f64,
    /// Defaults to p1; accepts `inf`.
    #[arg(long)]
    q1: Option<String>,
    /// Defaults to p2; accepts `inf`.
    #[arg(long)]
    q2: Option<String>,
}

impl ExponentArgs {
    fn pair(&self) -> Result<ExponentPair> {
        let q = |flag: &str, raw: &Option<String>, p: f64| -> Result<Exponent> {
            match raw {
                Some(s) => s.parse().with_context(|| format!("--{flag} {s}")),
                None => Ok(Exponent::new(p)?),
            }
        };
        let q1 = q("q1", &self.q1, self.p1)?;
        let q2 = q("q2", &self.q2, self.p2)?;
        Ok(ExponentPair::new([self.p1, self.p2], [q1, q2])?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Outcome {
    Done,
    ChecksFailed,
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn emit_report(output: Option<&Path>, report: &VerificationReport) -> Result<Outcome> {
    emit(output, &report.to_json())?;
    Ok(if report.pass {
        Outcome::Done
    } else {
        Outcome::ChecksFailed
    })
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => a == b,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Transform {
            function,
            format,
            all,
        } => {
            let spectrum = haar_forward_2d(&function.spec()?.generate()?);
            let text = match format {
                Format::Csv => spectrum.to_csv(all),
                Format::Json => spectrum.to_json(all),
            };
            emit(output, &text)?;
        }
        Command::Norm {
            function,
            exponents,
            format,
        } => {
            let e = exponents.pair()?;
            let report = NormReport::for_spec(&function.spec()?, &e)?;
            let text = match format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            emit(output, &text)?;
        }
        Command::Netmax { function, format } => {
            let table = NetMaximalTable::compute(&function.spec()?.generate()?);
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            };
            emit(output, &text)?;
        }
        Command::Verify {
            function,
            exponents,
        } => {
            let e = exponents.pair()?;
            let spec = function.spec()?;
            return emit_report(output, &verify_function(&spec, &e)?);
        }
        Command::Sweep { config, seed } => {
            let mut cfg = match &config {
                Some(path) => {
                    if output.is_some_and(|out| same_file(out, path)) {
                        bail!(
                            "--output would overwrite the config file {}",
                            path.display()
                        );
                    }
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    SweepConfig::from_toml(&text)
                        .with_context(|| format!("config {}", path.display()))?
                }
                None => SweepConfig::from_toml(DEFAULT_CONFIG)?,
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            return emit_report(output, &run_sweep(&cfg)?);
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line: Vec<&str> = rendered
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(1);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(cli)),
        Err(e) => Err(e.into()),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
