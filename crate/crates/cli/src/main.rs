use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use commgraph::corpus::CorpusEntry;
use commgraph::driver::{self, Error, RunOptions};
use commgraph::report::{GraphReport, CSV_HEADER};
use commgraph::sampler::DEFAULT_BOUND;

#[derive(Parser)]
#[command(
    name = "commgraph",
    version,
    about = "Commuting graphs of finite groups and a quaternion valuation model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Abort enumeration once a group exceeds this many elements.
    #[arg(long, global = true)]
    max_order: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Report millis as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Components, diameter and hypothesis verdict for one group.
    Analyze { entry: String },
    /// Search for a balanced pair.
    Balanced { entry: String },
    /// Components and diameter only.
    Diam { entry: String },
    /// Compare the distance engine against brute-force all-pairs BFS.
    OracleDiff {
        entry: String,
        /// Largest group order the brute-force oracle will accept.
        #[arg(long = "oracle")]
        oracle_cap: Option<usize>,
    },
    /// Run every quaternion valuation checker.
    Uhyp {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
    },
    /// Analyze every entry listed in a file, one per line.
    Corpus { file: PathBuf },
}

fn entry(name: &str) -> Result<CorpusEntry, Error> {
    Ok(name.parse::<CorpusEntry>()?)
}

fn json(v: Result<String, serde_json::Error>) -> String {
    let mut s = v.expect("reports serialize");
    s.push('\n');
    s
}

fn csv(rows: &[GraphReport]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

fn json_only(cli: &Cli, what: &str) -> Result<(), Error> {
    if cli.format == Format::Csv {
        return Err(Error::Invalid(format!(
            "{what} has no CSV form; use --format json"
        )));
    }
    Ok(())
}

/// Returns the rendered report and whether it records a verification
/// failure.
fn run(cli: &Cli) -> Result<(String, Option<String>), Error> {
    let opts = RunOptions {
        max_order: cli.max_order,
        timing: !cli.no_timing,
    };
    Ok(match &cli.command {
        Command::Analyze { entry: e } => {
            let r = driver::run_analyze(&entry(e)?, &opts)?;
            match cli.format {
                Format::Json => (json(serde_json::to_string_pretty(&r)), None),
                Format::Csv => (csv(std::slice::from_ref(&r)), None),
            }
        }
        Command::Corpus { file } => {
            let rows = driver::run_corpus(file, &opts)?;
            match cli.format {
                Format::Json => (json(serde_json::to_string_pretty(&rows)), None),
                Format::Csv => (csv(&rows), None),
            }
        }
        Command::Balanced { entry: e } => {
            json_only(cli, "balanced")?;
            (
                json(serde_json::to_string_pretty(&driver::run_balanced(
                    &entry(e)?,
                    &opts,
                )?)),
                None,
            )
        }
        Command::Diam { entry: e } => {
            json_only(cli, "diam")?;
            (
                json(serde_json::to_string_pretty(&driver::run_diam(
                    &entry(e)?,
                    &opts,
                )?)),
                None,
            )
        }
        Command::OracleDiff {
            entry: e,
            oracle_cap,
        } => {
            json_only(cli, "oracle-diff")?;
            let d = driver::run_oracle_diff(&entry(e)?, *oracle_cap, cli.max_order)?;
            let failed = (!d.is_empty())
                .then(|| format!("{}: {} distance mismatches", d.group, d.mismatch_count));
            (json(serde_json::to_string_pretty(&d)), failed)
        }
        Command::Uhyp {
            samples,
            seed,
            bound,
        } => {
            json_only(cli, "uhyp")?;
            let r = driver::run_uhyp(*samples, *seed, *bound)?;
            let failed = (!r.passed).then(|| {
                let n: usize = r.reports.iter().map(|c| c.failures.len()).sum();
                format!("{n} claim failures")
            });
            (json(serde_json::to_string_pretty(&r)), failed)
        }
    })
}

fn write_out(cli: &Cli, text: &str) -> Result<(), Error> {
    let res = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Error::Invalid(format!("cannot write report: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, failed)| {
        write_out(&cli, &text)?;
        match failed {
            Some(msg) => Err(Error::Verification(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("commgraph: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
