//! `degen`: command-line entry point.
//!
//! Exit status: 0 clean, 1 an axiom or criterion fails, 2 invalid input.

use crate::exact::rational::parse_rational;
use crate::exact::Rational;
use crate::report::build::{self, Options, DEFAULT_MS};
use crate::report::input::{parse_fixture, read_file, Fixture, InputError};
use crate::report::selftest::selftest;
use crate::report::DiagnosticReport;
use crate::topology::ComponentGenera;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "degen", version, about = "Boundary diagnostics for degenerations of Hodge structures and curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    report: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Bounds {
    #[arg(long, default_value_t = 4)]
    vmax: usize,
    #[arg(long, default_value_t = 5)]
    emax: usize,
    #[arg(long, default_value_t = 3)]
    gmax: u32,
    /// Check that R(2) = R(3) = R(4) = 0 forces a single smooth component.
    #[arg(long)]
    check_smoothability: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a limiting mixed Hodge structure.
    Mhs { fixture: String },
    /// Norm determinant, distance classification and path lengths.
    Metric {
        fixture: String,
        #[arg(long, value_parser = rational_arg)]
        y0: Option<Rational>,
        #[arg(long = "Y", value_parser = rational_arg)]
        y1: Option<Rational>,
    },
    /// Pluri-genus bookkeeping of a stable curve.
    #[command(args_conflicts_with_subcommands = true)]
    Curve {
        fixture: Option<String>,
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u32>>,
        #[command(subcommand)]
        sub: Option<CurveCommand>,
    },
    /// Betti numbers across a conifold-type smoothing.
    Surgery { fixture: String },
    /// Geometric genus of the generic fibre against the central components.
    Pg {
        fixture: Option<String>,
        #[arg(long)]
        generic: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        components: Option<Vec<u64>>,
    },
    /// Exhaustive check over small stable dual graphs.
    Enumerate(Bounds),
    /// Run the bundled fixtures and reduced property suites.
    Selftest {
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CurveCommand {
    Enumerate(Bounds),
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational number"))
}

fn load(path: &str, expected: &str) -> Result<Fixture, InputError> {
    let fixture = parse_fixture(&read_file(path)?)?;
    if fixture.kind() != expected {
        return Err(InputError::Kind { expected: expected.into(), found: fixture.kind().into() });
    }
    Ok(fixture)
}

fn dispatch(cmd: &Command) -> Result<DiagnosticReport, InputError> {
    match cmd {
        Command::Mhs { fixture } => match load(fixture, "lmhs")? {
            Fixture::Lmhs(f) => Ok(build::mhs_report(&f)),
            _ => unreachable!(),
        },
        Command::Metric { fixture, y0, y1 } => match load(fixture, "lmhs")? {
            Fixture::Lmhs(f) => build::metric_report(&f, &Options { ms: None, y0: y0.clone(), y1: y1.clone() }),
            _ => unreachable!(),
        },
        Command::Curve { sub: Some(CurveCommand::Enumerate(b)), .. } | Command::Enumerate(b) => {
            Ok(build::enumerate_report(b.vmax, b.emax, b.gmax, b.check_smoothability))
        }
        Command::Curve { fixture, m, sub: None } => {
            let path = fixture.as_deref().ok_or_else(|| InputError::Schema("curve needs a fixture".into()))?;
            match load(path, "curve")? {
                Fixture::Curve(c) => build::curve_report(&c, m.as_deref().unwrap_or(&DEFAULT_MS)),
                _ => unreachable!(),
            }
        }
        Command::Surgery { fixture } => match load(fixture, "surgery")? {
            Fixture::Surgery(d) => build::surgery_report(&d),
            _ => unreachable!(),
        },
        Command::Pg { fixture, generic, components } => {
            let data = match (fixture, generic, components) {
                (Some(path), None, None) => match load(path, "pg")? {
                    Fixture::Pg(c) => c,
                    _ => unreachable!(),
                },
                (None, Some(g), Some(cs)) => {
                    ComponentGenera::new(*g, cs.clone()).map_err(|e| InputError::Schema(e.to_string()))?
                }
                _ => return Err(InputError::Schema("pg needs a fixture or both --generic and --components".into())),
            };
            Ok(build::pg_report(&data))
        }
        Command::Selftest { corrupt } => Ok(selftest(corrupt.as_deref())),
    }
}

fn emit(report: &DiagnosticReport, output: &OutputArgs) -> Result<(), String> {
    let body = match output.report {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {path}: {e}")),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Err(e) = emit(&report, &cli.output) {
        eprintln!("error: {e}");
        return 2;
    }
    report.exit_code()
}
