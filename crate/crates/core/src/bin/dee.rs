use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use distance_estrada::harness::{
    parse_range, sweep, to_json, verify, write_records_csv, BoundsOutput, ReportRecord, SweepSpec,
};
use distance_estrada::io::{parse_edge_list, parse_graph6};
use distance_estrada::{Error, Result};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "dee",
    version,
    about = "Distance Estrada index: spectra, bounds and exhaustive checks"
)]
struct Cli {
    /// Worker threads (defaults to DEE_THREADS, then the number of cores).
    #[arg(long, global = true, env = "DEE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectra, indices and bound reports for one graph.
    Compute(SingleGraph),
    /// Bound reports for one graph.
    Bounds(SingleGraph),
    /// One report row per member of a graph family.
    Sweep(SweepArgs),
    /// Check every bound on all connected labeled graphs up to a given order.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
    g6: Option<String>,
    /// Edge-list file: "n m" then m lines "u v".
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Args)]
struct SingleGraph {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// complete, cycle, path, star, petersen, multipartite, gnp
    #[arg(long)]
    family: String,
    /// Inclusive order range, e.g. 2..10.
    #[arg(long)]
    n: Option<String>,
    /// Part sizes for the multipartite family, e.g. 2,2,2.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    /// Edge probability for gnp.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_graph(input: &GraphInput) -> Result<distance_estrada::graph::Graph> {
    match (&input.g6, &input.edges) {
        (Some(s), _) => parse_graph6(s),
        (None, Some(path)) => parse_edge_list(&fs::read_to_string(path)?),
        (None, None) => Err(Error::InvalidArgument(
            "one of --g6 or --edges is required".into(),
        )),
    }
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn single(args: &SingleGraph, bounds_only: bool) -> Result<()> {
    let g = read_graph(&args.input)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let record = ReportRecord::new(&g)?;
    let mut buf = Vec::new();
    match (args.format, bounds_only) {
        (Format::Json, false) => buf = to_json(&record)?.into_bytes(),
        (Format::Json, true) => buf = to_json(&BoundsOutput::from(&record))?.into_bytes(),
        (Format::Csv, _) => write_records_csv(&mut buf, std::slice::from_ref(&record))?,
    }
    emit(&args.out, &buf)
}

fn run_sweep(args: &SweepArgs) -> Result<()> {
    let spec = SweepSpec {
        family: args.family.clone(),
        n: args.n.as_deref().map(parse_range).transpose()?,
        parts: args.parts.clone(),
        p: args.p,
        seed: args.seed,
    };
    let records = sweep(&spec)?;
    let mut buf = Vec::new();
    match args.format {
        Format::Csv => write_records_csv(&mut buf, &records)?,
        Format::Json => buf = to_json(&records)?.into_bytes(),
    }
    emit(&args.out, &buf)
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let summary = verify(args.max_n)?;
    let mut buf = Vec::new();
    match args.format {
        Format::Csv => summary.write_csv(&mut buf)?,
        Format::Json => buf = to_json(&summary)?.into_bytes(),
    }
    emit(&args.out, &buf)?;
    eprintln!(
        "checked {} graphs: {} violations, {} findings, {} equality hits",
        summary.graphs_checked,
        summary.violations.len(),
        summary.findings.len(),
        summary.equality_hits.len()
    );
    Ok(summary.passed())
}

fn exit_code(err: &Error) -> u8 {
    if err.is_parse() || matches!(err, Error::Io(_)) {
        EXIT_PARSE
    } else {
        EXIT_PRECONDITION
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("dee: {e}");
            return ExitCode::from(EXIT_PRECONDITION);
        }
    }
    let result = match &cli.command {
        Command::Compute(args) => single(args, false).map(|_| true),
        Command::Bounds(args) => single(args, true).map(|_| true),
        Command::Sweep(args) => run_sweep(args).map(|_| true),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("dee: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
