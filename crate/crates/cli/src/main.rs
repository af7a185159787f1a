//! `koszulkit`: randomized verification suites, SL(2) block reports and
//! cohomology tables of serialized dg-modules.
//!
//! Exit status is 0 when every verdict passes, 1 when a mathematical check
//! fails and 2 on usage or input errors.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use koszulkit_core::sl2::sl2_report;
use koszulkit_core::suites::{run_suite, Suite, SuiteConfig};
use koszulkit_core::{DgObject, Error, SemifreeDgModule, Window};

use render::{TableReport, VerifyReport};

#[derive(Parser)]
#[command(
    name = "koszulkit",
    version,
    about = "Linear Koszul duality and SL(2) block checks over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Human,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized identity suites on seeded semifree modules.
    Verify {
        /// A suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        dim_e: usize,
        #[arg(long, default_value_t = 1)]
        dim_f: usize,
        #[arg(short, long = "prime", default_value_t = 5)]
        p: u32,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, env = "KOSZULKIT_SEED", default_value_t = 0)]
        seed: u64,
        /// Clip every comparison to `i0:i1,j0:j1`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        #[command(flatten)]
        output: Output,
    },
    /// Build a block of the restricted enveloping algebra of SL(2) and check it.
    Sl2 {
        #[arg(short, long = "prime")]
        p: u32,
        #[arg(
            long,
            conflicts_with = "singular",
            required_unless_present = "singular"
        )]
        lambda: Option<u32>,
        #[arg(long)]
        singular: bool,
        /// Homological degree bound for the Koszulity probe.
        #[arg(long, default_value_t = 4)]
        hbound: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Print the cohomology table of a serialized dg-module.
    Table {
        file: PathBuf,
        /// `i0:i1,j0:j1`; defaults to eight internal degrees around the generators.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Usage(String),
    Verdict,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(output: &Output, text: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn suites(name: &str) -> Result<Vec<Suite>, Failure> {
    if name == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![name.parse()?])
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            suite,
            dim_e,
            dim_f,
            p,
            trials,
            seed,
            window,
            output,
        } => {
            let cfg = SuiteConfig {
                e: dim_e,
                f: dim_f,
                p,
                trials,
                seed,
                window,
            };
            let reports = suites(&suite)?
                .into_iter()
                .map(|s| run_suite(s, &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            let report = VerifyReport::new(reports);
            emit(&output, render::verify(&report, output.format))?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Sl2 {
            p,
            lambda,
            singular,
            hbound,
            output,
        } => {
            let report = sl2_report(p, if singular { None } else { lambda }, hbound)?;
            emit(&output, render::sl2(&report, output.format))?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Table {
            file,
            window,
            output,
        } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let m = SemifreeDgModule::from_json(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let w = window.unwrap_or_else(|| {
                let (lo, hi) = m.internal_range().unwrap_or((0, 0));
                Window::internal(lo - 8, hi + 8)
            });
            let report = TableReport::new(&m, w, m.cohomology(&w));
            emit(&output, render::table(&report, output.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
