use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use dynheight::{job, Format, JobSpec, MapSource};
use dynheight_core::DEFAULT_TRIAL_BOUND;

/// Canonical height of a rational point under a morphism of P^1 over Q.
#[derive(Parser, Debug)]
#[command(version, about)]
#[command(group(ArgGroup::new("source").args(["map", "map_file", "fixture"])))]
struct Cli {
    /// Map as `F = ...; G = ...` or `phi(z) = (...)/(...)`.
    #[arg(long)]
    map: Option<String>,
    /// File holding a map in the same grammar.
    #[arg(long, value_name = "PATH")]
    map_file: Option<PathBuf>,
    /// Built-in example (ex1 .. ex4).
    #[arg(long, value_name = "ID")]
    fixture: Option<String>,
    /// Point as `[x, y]`, `x`, or `P = [x, y]`; rationals allowed.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Number of series terms N (default 50).
    #[arg(long, value_name = "N")]
    terms: Option<usize>,
    /// Working precision in bits (default grows with N, d and the coefficients).
    #[arg(long, value_name = "BITS")]
    precision: Option<u32>,
    /// Strip primes up to B from |Res| before the nonarchimedean series.
    #[arg(long, value_name = "B", default_value_t = DEFAULT_TRIAL_BOUND)]
    trial_bound: u64,
    /// Skip trial division and work modulo powers of |Res| directly.
    #[arg(long)]
    no_factor: bool,
    /// Include g_0 .. g_{N-1} in the report.
    #[arg(long)]
    emit_g_sequence: bool,
    /// Also print d^-n h(phi^n P) for n = 0..=N from exact iterates.
    #[arg(long, value_name = "N")]
    oracle: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// List the built-in examples and exit.
    #[arg(long)]
    list_fixtures: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_fixtures {
        print!("{}", job::list_fixtures());
        return ExitCode::SUCCESS;
    }
    let map = match (cli.map, cli.map_file, cli.fixture) {
        (Some(m), None, None) => MapSource::Inline(m),
        (None, Some(p), None) => MapSource::File(p),
        (None, None, Some(id)) => MapSource::Fixture(id),
        _ => {
            eprintln!("error: give exactly one of --map, --map-file, --fixture");
            return ExitCode::from(2);
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let spec = JobSpec {
        map,
        point: cli.point,
        terms: cli.terms,
        precision_bits: cli.precision,
        trial_bound: (!cli.no_factor).then_some(cli.trial_bound),
        format,
        emit_g_sequence: cli.emit_g_sequence,
        oracle_n: cli.oracle,
    };
    match dynheight::run(&spec) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", outcome.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
