//! `atlas`: tables, graph exports and structural checks for partition
//! transfer graphs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

mod cache;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use support_atlas::io::{
    components_table, jumps_table, level_matrix_table, strata_table, summary_table, to_dot,
    AtlasRecord, ColorBy, Format,
};
use support_atlas::{
    atlas::first_occurrences_in, degree_formula, verify_theorems_with, Partition,
    PartitionGraph, StratumAtlas, VerifyOptions,
};

use crate::cache::Cache;

/// Largest `n` for which full graphs are built without `--force`.
const DEFAULT_N_CEILING: u32 = 40;

#[derive(Debug, Parser)]
#[command(name = "atlas", version, about = "Support strata and support jumps of partition transfer graphs")]
struct Cli {
    /// Directory for cached per-n results.
    #[arg(long, global = true, env = "ATLAS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stratum sizes a(n,r) for each n in the range.
    Strata(RangeArgs),
    /// Edge counts by support-jump magnitude.
    Jumps(RangeArgs),
    /// Level-edge matrix for a single n.
    LevelMatrix(SingleArgs),
    /// Component counts of each fixed-support subgraph.
    Components(RangeArgs),
    /// Per-stratum size, internal edges, components and degree range.
    Summary(SingleArgs),
    /// First n at which each tracked feature appears.
    FirstOccurrences(FirstArgs),
    /// Write the transfer graph as Graphviz DOT.
    ExportDot(DotArgs),
    /// Run every structural check for 1 <= n <= n-max.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Md,
}

impl From<TableFormat> for Format {
    fn from(f: TableFormat) -> Self {
        match f {
            TableFormat::Csv => Format::Csv,
            TableFormat::Json => Format::Json,
            TableFormat::Md => Format::Md,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DotColor {
    Sigma,
    Jump,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fault {
    /// Report one more than the closed-form degree.
    DegreeOffByOne,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long)]
    from: u32,
    #[arg(long)]
    to: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Allow n above the default ceiling.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct SingleArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct FirstArgs {
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct DotArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "sigma")]
    color_by: DotColor,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long)]
    force: bool,
    /// Deliberately break a formula to confirm the checks notice.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, io::Error),
    VerificationFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Io(..) => 3,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Io(path, e) => eprintln!("error: {}: {e}", path.display()),
                CliError::VerificationFailed => {}
            }
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cache = cli.cache_dir.map(Cache::new);
    match cli.command {
        Command::Strata(a) => {
            let atl = atlases(&a, cache.as_ref())?;
            emit(&a.output, &strata_table(&atl).render(a.format.into()))
        }
        Command::Jumps(a) => {
            let atl = atlases(&a, cache.as_ref())?;
            emit(&a.output, &jumps_table(&atl).render(a.format.into()))
        }
        Command::Components(a) => {
            let atl = atlases(&a, cache.as_ref())?;
            emit(&a.output, &components_table(&atl).render(a.format.into()))
        }
        Command::LevelMatrix(a) => {
            let atlas = single_atlas(&a, cache.as_ref())?;
            emit(&a.output, &level_matrix_table(&atlas).render(a.format.into()))
        }
        Command::Summary(a) => {
            let atlas = single_atlas(&a, cache.as_ref())?;
            emit(&a.output, &summary_table(&atlas).render(a.format.into()))
        }
        Command::FirstOccurrences(a) => {
            check_n(a.n_max, a.force)?;
            let atl = load_range(1, a.n_max, cache.as_ref())?;
            let report = first_occurrences_in(&atl);
            let text = match a.format {
                ReportFormat::Text => report.to_string(),
                ReportFormat::Json => json_line(&report),
            };
            emit(&a.output, &text)
        }
        Command::ExportDot(a) => {
            check_n(a.n, a.force)?;
            let graph = PartitionGraph::build(a.n).map_err(|e| CliError::Usage(e.to_string()))?;
            let color = match a.color_by {
                DotColor::Sigma => ColorBy::Sigma,
                DotColor::Jump => ColorBy::Jump,
            };
            write_file(&a.out, &to_dot(&graph, color))
        }
        Command::Verify(a) => {
            check_n(a.n_max, a.force)?;
            let mut opts = VerifyOptions::default();
            if let Some(Fault::DegreeOffByOne) = a.inject_fault {
                opts.degree_fn = degree_off_by_one;
            }
            let report =
                verify_theorems_with(a.n_max, opts).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = match a.format {
                ReportFormat::Text => report.to_string(),
                ReportFormat::Json => json_line(&report),
            };
            emit(&a.output, &text)?;
            if report.passed {
                Ok(())
            } else {
                for c in report.failures() {
                    if let Some(cx) = &c.counterexample {
                        eprintln!("check {} failed: {cx}", c.id);
                    }
                }
                Err(CliError::VerificationFailed)
            }
        }
    }
}

fn degree_off_by_one(lambda: &Partition) -> u64 {
    degree_formula(lambda) + 1
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn check_n(n: u32, force: bool) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    if n > DEFAULT_N_CEILING && !force {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds the default ceiling of {DEFAULT_N_CEILING}; \
             graph size grows like p(n), pass --force to proceed"
        )));
    }
    Ok(())
}

fn atlases(a: &RangeArgs, cache: Option<&Cache>) -> Result<Vec<StratumAtlas>, CliError> {
    if a.from == 0 || a.from > a.to {
        return Err(CliError::Usage(format!(
            "invalid range {}..={}: bounds must be positive and ordered",
            a.from, a.to
        )));
    }
    check_n(a.to, a.force)?;
    load_range(a.from, a.to, cache)
}

fn single_atlas(a: &SingleArgs, cache: Option<&Cache>) -> Result<StratumAtlas, CliError> {
    check_n(a.n, a.force)?;
    Ok(load_range(a.n, a.n, cache)?.remove(0))
}

/// Atlases for `from..=to`, served from the cache where possible. Fresh
/// results are written back.
fn load_range(from: u32, to: u32, cache: Option<&Cache>) -> Result<Vec<StratumAtlas>, CliError> {
    let Some(cache) = cache else {
        return support_atlas::atlas_range(from, to).map_err(|e| CliError::Usage(e.to_string()));
    };
    let mut out = Vec::with_capacity((to - from + 1) as usize);
    for n in from..=to {
        let atlas = match cache.get(n) {
            Some(rec) => rec.into_atlas(),
            None => {
                let atlas =
                    StratumAtlas::compute(n).map_err(|e| CliError::Usage(e.to_string()))?;
                cache
                    .put(&AtlasRecord::from_atlas(&atlas))
                    .map_err(|e| CliError::Io(cache.path_for(n), e))?;
                atlas
            }
        };
        out.push(atlas);
    }
    Ok(out)
}

fn emit(output: &Output, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e))
}
