//! `cgspan`: mine, verify and benchmark frequent and closed subgraphs.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use cgspan_core::oracle::verify_run;
use cgspan_core::{mine, parse_dataset, write_patterns, DfsCode, GraphDatabase, MinSupport, MiningConfig, Mode, ParseOptions};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cgspan", version, about = "Frequent and closed subgraph mining")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine patterns and write them in the pattern file format.
    Mine {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "closed")]
        mode: Mode,
        /// Pattern file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print run statistics as JSON on standard error.
        #[arg(long)]
        stats: bool,
    },
    /// Compare closed mining with brute-force closure filtering.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "closed")]
        mode: Mode,
    },
    /// Run frequent and closed mining over a list of supports and emit CSV.
    Bench {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated supports, e.g. `0.1,0.08,0.07`.
        #[arg(long, value_delimiter = ',', required = true)]
        supports: Vec<MinSupport>,
        #[arg(long)]
        string_labels: bool,
        /// CSV file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// A value in (0, 1] is a fraction of the graphs, a larger integer a count.
    #[arg(long)]
    min_support: MinSupport,
    /// Accept non-numeric labels.
    #[arg(long)]
    string_labels: bool,
}

#[derive(Serialize)]
struct StatsJson {
    schema: u32,
    mode: String,
    graphs: usize,
    min_support: usize,
    pattern_count: usize,
    visited_nodes: usize,
    non_minimal: usize,
    early_terminations_applied: usize,
    early_terminations_rejected: usize,
    collision_rejections: usize,
    trie_codes: usize,
    trie_nodes: usize,
    cght_keys: usize,
    wall_secs: f64,
}

#[derive(Serialize)]
struct BenchRow {
    min_support: String,
    frequent_count: usize,
    closed_count: usize,
    closed_ratio: f64,
    frequent_secs: f64,
    closed_secs: f64,
    ratio_secs: f64,
}

fn load(path: &Path, string_labels: bool) -> Result<GraphDatabase> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    parse_dataset(BufReader::new(file), ParseOptions { intern_labels: string_labels })
        .with_context(|| format!("{}", path.display()))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn show(code: &DfsCode, db: &GraphDatabase) -> String {
    code.tuples()
        .iter()
        .map(|t| {
            format!(
                "({},{},{},{},{})",
                t.from,
                t.to,
                db.label_name(t.from_label),
                db.label_name(t.edge_label),
                db.label_name(t.to_label)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn support_text(s: &MinSupport) -> String {
    match s {
        MinSupport::Fraction(f) => f.to_string(),
        MinSupport::Absolute(k) => k.to_string(),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Mine { input, mode, output, stats } => {
            let db = load(&input.input, input.string_labels)?;
            let cfg = MiningConfig::new(input.min_support, mode);
            let start = Instant::now();
            let result = mine(&db, &cfg)?;
            let secs = start.elapsed().as_secs_f64();
            let mut out = sink(output.as_deref())?;
            write_patterns(&result.patterns, &db, &mut out)?;
            out.flush()?;
            if stats {
                let s = &result.stats;
                let json = StatsJson {
                    schema: 1,
                    mode: mode.to_string(),
                    graphs: db.len(),
                    min_support: s.min_support,
                    pattern_count: s.pattern_count,
                    visited_nodes: s.visited_nodes,
                    non_minimal: s.non_minimal,
                    early_terminations_applied: s.early_terminations_applied,
                    early_terminations_rejected: s.early_terminations_rejected,
                    collision_rejections: s.collision_rejections,
                    trie_codes: s.trie_codes,
                    trie_nodes: s.trie_nodes,
                    cght_keys: s.cght_keys,
                    wall_secs: secs,
                };
                eprintln!("{}", serde_json::to_string(&json)?);
            }
            Ok(true)
        }
        Command::Verify { input, mode } => {
            let db = load(&input.input, input.string_labels)?;
            let report = verify_run(&db, &MiningConfig::new(input.min_support, mode))?;
            println!("mined {} expected {}", report.mined, report.expected);
            for c in &report.missing {
                println!("missing {}", show(c, &db));
            }
            for c in &report.extra {
                println!("extra {}", show(c, &db));
            }
            println!("{}", if report.passed() { "PASS" } else { "FAIL" });
            Ok(report.passed())
        }
        Command::Bench { input, supports, string_labels, output } => {
            let db = load(&input, string_labels)?;
            let mut csv = csv::Writer::from_writer(sink(output.as_deref())?);
            for s in supports {
                let time = |mode| -> Result<(usize, f64)> {
                    let start = Instant::now();
                    let n = mine(&db, &MiningConfig::new(s, mode))?.patterns.len();
                    Ok((n, start.elapsed().as_secs_f64()))
                };
                let (frequent_count, frequent_secs) = time(Mode::Frequent)?;
                let (closed_count, closed_secs) = time(Mode::Closed)?;
                let ratio = |a: f64, b: f64| if b > 0.0 { a / b } else { 0.0 };
                csv.serialize(BenchRow {
                    min_support: support_text(&s),
                    frequent_count,
                    closed_count,
                    closed_ratio: ratio(closed_count as f64, frequent_count as f64),
                    frequent_secs,
                    closed_secs,
                    ratio_secs: ratio(closed_secs, frequent_secs),
                })?;
                csv.flush()?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
