use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use eulerspine::census::{
    eulerian_path_count_check, run_census, verify_text, CensusOptions, CensusRecord, CheckStatus,
};
use eulerspine::framing::{find_framings, framed_from_code, FramedGraphCode};
use eulerspine::geometry::volume_table;
use eulerspine::graphs::{generate_graphs, generate_simple_graphs, parse_graphs, serialize_graph};
use eulerspine::spine::build_spine;
use eulerspine::triangulation::{dualize, export, ExportFormat};
use eulerspine::Error;

#[derive(Parser)]
#[command(
    author,
    version,
    about = "Census of framed 4-regular graphs and their hyperbolic manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every connected 4-regular multigraph on K vertices.
    Gen {
        #[arg(long)]
        n: usize,
        /// Only graphs without loops or parallel edges.
        #[arg(long)]
        simple: bool,
    },
    /// List the framings of each graph in FILE.
    Framings {
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate all framed graphs for n in A..=B and write the census.
    Census {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        three_connected: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
        /// Permit n = 7.
        #[arg(long)]
        allow_slow: bool,
        /// Census these graph files instead of generating graphs.
        #[arg(long)]
        input: Vec<PathBuf>,
    },
    /// Print the truncated-tetrahedron volume table for n = 4..=K.
    Volume {
        #[arg(long)]
        n_max: usize,
    },
    /// Export the ideal triangulation of a framed code or census record.
    Export {
        #[arg(long)]
        record: String,
        #[arg(long, default_value = "tri-json")]
        format: String,
    },
    /// Re-run every check on census lines, framed codes or a tri-json file.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Brute-force count of Eulerian paths against (2n)!/(n! 2^n).
    PathCount {
        #[arg(long)]
        n: usize,
    },
}

/// Failed checks, distinct from errors.
struct CheckFailure(String);

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::LimitExceeded(_)) => 3,
        _ => 2,
    }
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<Option<CheckFailure>> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Gen { n, simple } => {
            let graphs = if simple {
                generate_simple_graphs(n)?
            } else {
                generate_graphs(n)?
            };
            for (i, g) in graphs.iter().enumerate() {
                writeln!(stdout, "# graph {i}")?;
                write!(stdout, "{}", serialize_graph(g))?;
            }
        }
        Command::Framings { input } => {
            for (i, g) in parse_graphs(&read(&input)?)?.iter().enumerate() {
                let framings = find_framings(g)?;
                writeln!(stdout, "# graph {i}: {} framings", framings.len())?;
                for f in framings {
                    writeln!(stdout, "{f}")?;
                }
            }
        }
        Command::Census {
            n_min,
            n_max,
            simple,
            three_connected,
            jobs,
            out,
            allow_slow,
            input,
        } => {
            let opts = CensusOptions {
                n_min,
                n_max,
                simple_only: simple,
                three_connected_only: three_connected,
                jobs,
                out_dir: out,
                inputs: input,
                allow_slow,
                timestamp: timestamp(),
            };
            let summary = run_census(&opts)?;
            for (n, c) in &summary.manifest.counts {
                writeln!(
                    stdout,
                    "n={n} graphs={} classes={} simple={} three_connected={} quarantined={}",
                    c.graphs, c.classes, c.classes_simple, c.classes_three_connected, c.quarantined
                )?;
            }
            for b in &summary.manifest.bounds {
                writeln!(
                    stdout,
                    "n={} |M_n|={} bound (2n)!/(n!*2)={} {} | n!={} n!*4^n={}",
                    b.n,
                    b.count,
                    b.upper_bound,
                    if b.within_bound { "ok" } else { "VIOLATED" },
                    b.n_factorial,
                    b.n_factorial_times_4n
                )?;
            }
            if !summary.quarantine.is_empty() {
                return Ok(Some(CheckFailure(format!(
                    "{} records quarantined",
                    summary.quarantine.len()
                ))));
            }
            if summary.manifest.bounds.iter().any(|b| !b.within_bound) {
                return Ok(Some(CheckFailure("census exceeds (2n)!/(n!*2)".into())));
            }
        }
        Command::Volume { n_max } => write!(stdout, "{}", volume_table(n_max)?)?,
        Command::Export { record, format } => {
            let format: ExportFormat = format.parse()?;
            let code = if record.trim_start().starts_with('{') {
                let rec: CensusRecord = serde_json::from_str(&record)
                    .map_err(|e| Error::MalformedInput(format!("record: {e}")))?;
                rec.framed_code
            } else {
                record.trim().to_string()
            };
            let (g, f) = framed_from_code(&FramedGraphCode::from_hex(&code)?)?;
            let t = dualize(&build_spine(&g, &f)?)?;
            write!(stdout, "{}", export(&t, format)?)?;
        }
        Command::Verify { input } => {
            let reports = verify_text(&read(&input)?)?;
            let mut failed = 0;
            for (i, r) in reports.iter().enumerate() {
                writeln!(stdout, "# instance {i} ({}, n={})", r.source, r.n)?;
                for c in &r.checks {
                    let tag = match c.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::NotApplicable => "N/A ",
                    };
                    writeln!(stdout, "{tag} {}: {}", c.name, c.detail)?;
                }
                failed += !r.all_pass() as usize;
            }
            if failed > 0 {
                return Ok(Some(CheckFailure(format!(
                    "{failed} of {} instances failed",
                    reports.len()
                ))));
            }
        }
        Command::PathCount { n } => {
            let c = eulerian_path_count_check(n)?;
            writeln!(stdout, "{}", serde_json::to_string(&c)?)?;
            if !c.matches {
                return Ok(Some(CheckFailure(
                    "count differs from (2n)!/(n! 2^n)".into(),
                )));
            }
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(CheckFailure(msg))) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        // output piped into something that stopped reading
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
