use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use condcolor::io::{read_coloring, write_coloring, write_graph};
use condcolor::{chi_r, is_uniquely_colorable, lower_bound, verify, Limits, SolveError, Verdict};
use harness::input::{family_instance, file_instance, parse_params, read_file, Instance};
use harness::report::write_reports;
use harness::sweep::{self, Grid, IntRange, ParamSpec, SweepConfig, DEFAULT_TIMEOUT_MS};
use harness::{ChiValue, Format, Report};

const EXIT_ERROR: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

/// Conditional (k, r)-coloring: exact solver, uniqueness checks and
/// prediction sweeps.
#[derive(Debug, Parser)]
#[command(name = "condcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a family instance in the graph text format.
    Gen(GenArgs),
    /// Compute the conditional chromatic number χ_r.
    Chi(SolveArgs),
    /// Decide unique (χ_r, r)-colorability.
    Unique(SolveArgs),
    /// Check a coloring file against a graph.
    Verify(VerifyArgs),
    /// Sweep parameter grids and compare the solver with known results.
    CheckTheorems(CheckArgs),
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Family name followed by key=value parameters, e.g. `gear n=3`.
    #[arg(value_name = "FAMILY [KEY=VALUE]...")]
    positional: Vec<String>,
    #[arg(long, conflicts_with = "graph")]
    family: Option<String>,
    /// Comma-separated key=value family parameters.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    /// Graph file to read instead of a family.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Accept disconnected graph files; reports are marked out of scope.
    #[arg(long)]
    allow_disconnected: bool,
    /// Seed for random families without an explicit `seed` parameter.
    #[arg(long)]
    seed: Option<u64>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<Instance> {
        let (named, mut items): (Vec<&String>, Vec<&String>) =
            self.positional.iter().partition(|s| !s.contains('='));
        if let Some(path) = &self.graph {
            if !self.positional.is_empty() || !self.params.is_empty() {
                bail!("--graph cannot be combined with family parameters");
            }
            return Ok(file_instance(path, self.allow_disconnected)?);
        }
        let family = match (self.family.as_deref(), named.as_slice()) {
            (Some(f), []) => f,
            (None, [f]) => f.as_str(),
            (None, []) => bail!("give a family (e.g. `gear n=3`) or --graph FILE"),
            _ => bail!("more than one family given"),
        };
        items.extend(self.params.iter());
        let params = parse_params(&items)?;
        Ok(family_instance(family, params, self.seed.unwrap_or(0))?)
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Output file; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    r: u64,
    #[arg(long, default_value_t = DEFAULT_TIMEOUT_MS, value_parser = clap::value_parser!(u64).range(1..))]
    timeout_ms: u64,
    /// Accepted for interface symmetry; a single solve is always sequential.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write the optimal coloring found to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    r: u64,
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// TOML sweep configuration; without it and without --family the
    /// built-in default grid runs.
    #[arg(long, conflicts_with = "family")]
    config: Option<PathBuf>,
    /// A single family (or join, tree-join, product) to sweep.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated parameters; integer values may be ranges `LO..HI`.
    #[arg(long, value_delimiter = ',', requires = "family")]
    params: Vec<String>,
    /// Inclusive r range, `N` or `LO..HI`.
    #[arg(long)]
    r: Option<IntRange>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    timeout_ms: Option<u64>,
    /// Worker threads across instances; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Report file; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also offer line-of-tree predictions at height 2.
    #[arg(long)]
    include_shallow: bool,
}

impl CheckArgs {
    fn config(&self) -> Result<SweepConfig> {
        let mut config = match (&self.config, &self.family) {
            (Some(path), _) => {
                let text = read_file(path)?;
                SweepConfig::from_toml(&text).with_context(|| path.display().to_string())?
            }
            (None, Some(family)) => {
                let params = parse_params(&self.params)?
                    .into_iter()
                    .map(|(k, v)| (k, ParamSpec(v)))
                    .collect();
                SweepConfig {
                    grids: vec![Grid {
                        family: family.clone(),
                        params,
                        r: None,
                    }],
                    ..SweepConfig::default_grid()
                }
            }
            (None, None) => SweepConfig::default_grid(),
        };
        if let Some(r) = self.r {
            config.r = Some(r);
            for grid in &mut config.grids {
                grid.r = None;
            }
        }
        if let Some(t) = self.timeout_ms {
            config.timeout_ms = t;
        }
        if let Some(j) = self.jobs {
            config.jobs = j;
        }
        if let Some(s) = self.seed {
            config.seed = s;
        }
        if let Some(f) = self.format {
            config.format = f;
        }
        if self.out.is_some() {
            config.output = self.out.clone();
        }
        config.include_shallow |= self.include_shallow;
        config.validate()?;
        Ok(config)
    }
}

fn write_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| path.display().to_string()),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn emit(out: Option<&Path>, format: Format, reports: &[Report]) -> Result<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| path.display().to_string())?;
            write_reports(io::BufWriter::new(file), format, reports)
        }
        None => write_reports(io::stdout().lock(), format, reports),
    }
}

fn millis(d: Duration) -> u64 {
    d.as_millis().try_into().unwrap_or(u64::MAX)
}

fn base_report(inst: &Instance, r: usize) -> Report {
    Report {
        instance: inst.key.clone(),
        n: inst.graph.order(),
        m: inst.graph.size(),
        r,
        chi_r: ChiValue::Timeout,
        lower_bound: lower_bound(&inst.graph, r),
        unique: None,
        partitions: None,
        prediction: None,
        outcome: None,
        nodes_explored: 0,
        elapsed_ms: 0,
        seed: inst.seed,
        note: inst
            .disconnected
            .then(|| "out of scope: disconnected input".to_owned()),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let inst = args.source.resolve()?;
    write_text(args.out.as_deref(), &write_graph(&inst.graph))?;
    Ok(0)
}

fn cmd_chi(args: &SolveArgs) -> Result<u8> {
    let inst = args.source.resolve()?;
    let r = args.r as usize;
    let limits = Limits::with_timeout(Duration::from_millis(args.timeout_ms));
    let mut report = base_report(&inst, r);
    let code = match chi_r(&inst.graph, r, limits) {
        Ok(res) => {
            report.chi_r = ChiValue::Value(res.chi_r);
            report.nodes_explored = res.nodes_explored;
            report.elapsed_ms = millis(res.elapsed);
            if let Some(path) = &args.witness {
                fs::write(path, write_coloring(&res.witness))
                    .with_context(|| path.display().to_string())?;
            }
            0
        }
        Err(SolveError::Timeout(t)) => {
            report.elapsed_ms = millis(t);
            EXIT_TIMEOUT
        }
        Err(e) => return Err(e.into()),
    };
    emit(None, args.format, &[report])?;
    Ok(code)
}

fn cmd_unique(args: &SolveArgs) -> Result<u8> {
    let inst = args.source.resolve()?;
    let r = args.r as usize;
    let limits = Limits::with_timeout(Duration::from_millis(args.timeout_ms));
    let mut report = base_report(&inst, r);
    let started = std::time::Instant::now();
    let code = match is_uniquely_colorable(&inst.graph, r, limits) {
        Ok(res) => {
            report.chi_r = ChiValue::Value(res.k);
            report.unique = Some(res.unique);
            report.partitions = Some(res.partitions.len());
            report.nodes_explored = res.nodes_explored;
            if let (Some(path), Some(first)) = (&args.witness, res.partitions.first()) {
                let mut colors = vec![0; inst.graph.order()];
                for (i, block) in first.blocks().iter().enumerate() {
                    for &v in block {
                        colors[v] = i as u32 + 1;
                    }
                }
                let coloring = condcolor::ColoringMap::new(colors, res.k);
                fs::write(path, write_coloring(&coloring))
                    .with_context(|| path.display().to_string())?;
            }
            0
        }
        Err(SolveError::Timeout(_)) => EXIT_TIMEOUT,
        Err(e) => return Err(e.into()),
    };
    report.elapsed_ms = millis(started.elapsed());
    emit(None, args.format, &[report])?;
    Ok(code)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let inst = file_instance(&args.graph, args.allow_disconnected)?;
    let text = read_file(&args.coloring)?;
    let coloring = read_coloring(&text).with_context(|| args.coloring.display().to_string())?;
    match verify(&inst.graph, &coloring, args.r as usize)? {
        Verdict::Ok => {
            println!("ok");
            Ok(0)
        }
        Verdict::Violation(v) => {
            println!("violation: {v}");
            Ok(EXIT_MISMATCH)
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<u8> {
    let config = args.config()?;
    let (reports, summary) = sweep::run(&config)?;
    emit(config.output.as_deref(), config.format, &reports)?;
    eprintln!("summary: {summary}");
    Ok(summary.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Chi(a) => cmd_chi(a),
        Command::Unique(a) => cmd_unique(a),
        Command::Verify(a) => cmd_verify(a),
        Command::CheckTheorems(a) => cmd_check(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
