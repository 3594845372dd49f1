//! Command-line front end: load, solve, evaluate, export, analyze.
//!
//! Exit codes: 0 on success, 1 on I/O or validation errors (one-line
//! diagnostic on stderr), 2 when a solve hit its time budget and returned a
//! feasible bound instead of a proven optimum (outputs are still written).

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{cluster_stats, edge_mix, EdgeAttribution};
use crate::frustration::count_frustration;
use crate::graph::SignedGraph;
use crate::milp;
use crate::solver::{
    solve_k_with, solve_unbounded_with, stagnation_curve, KMinStar, SolveOptions, SolveResult,
    SolveStatus,
};
use crate::{io as gio, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "clusterability",
    version,
    about = "Partition signed networks into internally cohesive, mutually divisive clusters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-frustration partition into at most K clusters, exactly
    SolveK(SolveKArgs),
    /// Minimum-frustration partition over any cluster count, exactly
    Solve(SolveArgs),
    /// Optima for k = 1..=K-MAX plus the unbounded optimum and the
    /// stagnation point where they meet
    Curve(CurveArgs),
    /// Count and classify the frustrated edges of a given partition
    Evaluate(EvaluateArgs),
    /// Write a binary linear program for an external MILP solver
    Export(ExportArgs),
    /// Verify an external solver's solution file against the graph
    Import(ImportArgs),
    /// Coalition composition statistics for a partition
    Stats(StatsArgs),
}

#[derive(Args)]
struct CommonSolve {
    /// Edge-list CSV (source,target,sign)
    input: PathBuf,
    /// Wall-clock budget in seconds for each exact solve
    #[arg(long)]
    time_limit: Option<f64>,
    /// Single-threaded search with a reproducible partition
    #[arg(long)]
    deterministic: bool,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Partition CSV used to warm-start the incumbent
    #[arg(long)]
    warm_start: Option<PathBuf>,
    /// Seed for the warm-start heuristic
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Prefix for output files (defaults to the input path minus extension)
    #[arg(long)]
    out_prefix: Option<PathBuf>,
}

#[derive(Args)]
struct SolveKArgs {
    #[command(flatten)]
    common: CommonSolve,
    /// Cluster cap
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonSolve,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    common: CommonSolve,
    /// Largest cluster cap to solve for
    #[arg(long)]
    k_max: usize,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Edge-list CSV (source,target,sign)
    input: PathBuf,
    /// Partition CSV (node,cluster) to evaluate
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Evaluate the partition induced by a node attribute (e.g. party)
    #[arg(long)]
    by_attribute: Option<String>,
    /// Attribute CSV (node,party,ideology,effectiveness)
    #[arg(long)]
    attributes: Option<PathBuf>,
    #[arg(long)]
    out_prefix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    /// Node-to-cluster assignment model with a fixed cluster cap
    Eq1,
    /// Pairwise same-cluster model without a cluster cap
    Eq2,
}

#[derive(Args)]
struct ExportArgs {
    /// Edge-list CSV (source,target,sign)
    input: PathBuf,
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Cluster cap (required for --model eq1)
    #[arg(long)]
    k: Option<usize>,
    /// Output path (defaults to <input stem>.lp)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ImportArgs {
    /// Edge-list CSV (source,target,sign)
    input: PathBuf,
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Solution file with one `name value` pair per line
    #[arg(long)]
    solution: PathBuf,
    #[arg(long)]
    out_prefix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum AttributionArg {
    /// Cross-coalition edges count toward both endpoint coalitions
    #[default]
    PerEndpoint,
    /// Only edges inside a coalition count
    Internal,
}

#[derive(Args)]
struct StatsArgs {
    /// Edge-list CSV (source,target,sign)
    input: PathBuf,
    /// Attribute CSV (node,party,ideology,effectiveness)
    #[arg(long)]
    attributes: PathBuf,
    /// Partition CSV (node,cluster)
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Use the partition induced by a node attribute instead
    #[arg(long)]
    by_attribute: Option<String>,
    /// Edge-to-coalition attribution convention for the mix report
    #[arg(long, value_enum, default_value_t = AttributionArg::PerEndpoint)]
    attribution: AttributionArg,
    #[arg(long)]
    out_prefix: Option<PathBuf>,
}

#[derive(Serialize)]
struct SolveRecord {
    command: String,
    input: String,
    k_limit: Option<usize>,
    optimum: u64,
    lower_bound: u64,
    status: String,
    cluster_count: usize,
    nodes_explored: u64,
    wall_time_seconds: f64,
    partition_file: String,
}

#[derive(Serialize)]
struct CurvePoint {
    k: usize,
    optimum: u64,
    status: String,
}

#[derive(Serialize)]
struct CurveRecord {
    command: String,
    input: String,
    k_max: usize,
    values: Vec<CurvePoint>,
    c_of_g: u64,
    c_status: String,
    k_min_star: Option<usize>,
    k_min_star_display: String,
    complete: bool,
    nodes_explored: u64,
    wall_time_seconds: f64,
    partition_file: String,
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args())
}

/// Testable entry point.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version/error text
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::SolveK(args) => run_solve(Some(args.k), args.common, "solve-k"),
        Command::Solve(args) => run_solve(None, args.common, "solve"),
        Command::Curve(args) => run_curve(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Export(args) => run_export(args),
        Command::Import(args) => run_import(args),
        Command::Stats(args) => run_stats(args),
    }
}

fn load_graph(path: &Path) -> anyhow::Result<SignedGraph> {
    gio::load_edge_list(path).with_context(|| format!("reading {}", path.display()))
}

fn prefix_for(input: &Path, out_prefix: &Option<PathBuf>) -> PathBuf {
    out_prefix
        .clone()
        .unwrap_or_else(|| input.with_extension(""))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    prefix.with_file_name(name)
}

fn solve_options(common: &CommonSolve, g: &SignedGraph) -> anyhow::Result<SolveOptions> {
    let warm_start = match &common.warm_start {
        Some(path) => Some(
            gio::load_partition(path, g)
                .with_context(|| format!("reading warm start {}", path.display()))?,
        ),
        None => None,
    };
    Ok(SolveOptions {
        time_limit: common.time_limit.map(Duration::from_secs_f64),
        threads: common.threads,
        deterministic: common.deterministic,
        seed: common.seed,
        warm_start,
        ..SolveOptions::default()
    })
}

fn write_solve_outputs(
    g: &SignedGraph,
    result: &SolveResult,
    prefix: &Path,
) -> anyhow::Result<PathBuf> {
    let partition_file = with_suffix(prefix, ".partition.csv");
    let file = File::create(&partition_file)
        .with_context(|| format!("creating {}", partition_file.display()))?;
    gio::write_partition(BufWriter::new(file), g, &result.partition)?;
    Ok(partition_file)
}

fn write_json(path: &Path, record: &impl Serialize) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    serde_json::to_writer_pretty(BufWriter::new(file), record)?;
    Ok(())
}

fn run_solve(k: Option<usize>, common: CommonSolve, command: &str) -> anyhow::Result<i32> {
    let g = load_graph(&common.input)?;
    let opts = solve_options(&common, &g)?;
    let result = match k {
        Some(k) => solve_k_with(&g, k, &opts)?,
        None => solve_unbounded_with(&g, &opts)?,
    };
    let prefix = prefix_for(&common.input, &common.out_prefix);
    let partition_file = write_solve_outputs(&g, &result, &prefix)?;
    let record = SolveRecord {
        command: command.to_string(),
        input: common.input.display().to_string(),
        k_limit: result.k_limit,
        optimum: result.optimum,
        lower_bound: result.lower_bound,
        status: result.status.to_string(),
        cluster_count: result.partition.cluster_count(),
        nodes_explored: result.nodes_explored,
        wall_time_seconds: result.wall_time.as_secs_f64(),
        partition_file: partition_file.display().to_string(),
    };
    let json_file = with_suffix(&prefix, ".result.json");
    write_json(&json_file, &record)?;

    println!(
        "nodes={} edges={} ({} positive, {} negative)",
        g.node_count(),
        g.edge_count(),
        g.positive_edge_count(),
        g.negative_edge_count()
    );
    println!(
        "{command}: optimum={} lower-bound={} status={} clusters={}",
        result.optimum,
        result.lower_bound,
        result.status,
        result.partition.cluster_count()
    );
    println!(
        "explored {} assignments in {:.3}s",
        result.nodes_explored,
        result.wall_time.as_secs_f64()
    );
    println!("partition -> {}", partition_file.display());
    println!("record -> {}", json_file.display());
    Ok(exit_code_for(result.status))
}

fn exit_code_for(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Optimal => 0,
        SolveStatus::FeasibleBound => 2,
    }
}

fn run_curve(args: CurveArgs) -> anyhow::Result<i32> {
    let common = args.common;
    let g = load_graph(&common.input)?;
    let opts = solve_options(&common, &g)?;
    let curve = stagnation_curve(&g, args.k_max, &opts)?;
    let prefix = prefix_for(&common.input, &common.out_prefix);
    let partition_file = write_solve_outputs(&g, &curve.unbounded, &prefix)?;

    let values: Vec<CurvePoint> = curve
        .per_k
        .iter()
        .map(|(&k, r)| CurvePoint {
            k,
            optimum: r.optimum,
            status: r.status.to_string(),
        })
        .collect();
    for point in &values {
        println!("k={} optimum={} status={}", point.k, point.optimum, point.status);
    }
    println!(
        "unbounded optimum={} status={}",
        curve.c_of_g(),
        curve.unbounded.status
    );
    println!("k-min-star={}", curve.k_min_star);

    let nodes_explored = curve.unbounded.nodes_explored
        + curve.per_k.values().map(|r| r.nodes_explored).sum::<u64>();
    let wall_time_seconds = curve.unbounded.wall_time.as_secs_f64()
        + curve
            .per_k
            .values()
            .map(|r| r.wall_time.as_secs_f64())
            .sum::<f64>();
    let record = CurveRecord {
        command: "curve".to_string(),
        input: common.input.display().to_string(),
        k_max: args.k_max,
        values,
        c_of_g: curve.c_of_g(),
        c_status: curve.unbounded.status.to_string(),
        k_min_star: match curve.k_min_star {
            KMinStar::Exact(k) => Some(k),
            _ => None,
        },
        k_min_star_display: curve.k_min_star.to_string(),
        complete: curve.complete(),
        nodes_explored,
        wall_time_seconds,
        partition_file: partition_file.display().to_string(),
    };
    let json_file = with_suffix(&prefix, ".result.json");
    write_json(&json_file, &record)?;
    println!("partition -> {}", partition_file.display());
    println!("record -> {}", json_file.display());
    Ok(if curve.complete() { 0 } else { 2 })
}

fn run_evaluate(args: EvaluateArgs) -> anyhow::Result<i32> {
    let mut g = load_graph(&args.input)?;
    let partition = match (&args.partition, &args.by_attribute) {
        (Some(path), None) => gio::load_partition(path, &g)
            .with_context(|| format!("reading partition {}", path.display()))?,
        (None, Some(attribute)) => {
            let attrs = args.attributes.as_ref().ok_or_else(|| {
                anyhow!("--by-attribute needs --attributes FILE to supply node attributes")
            })?;
            gio::load_attributes(attrs, &mut g)
                .with_context(|| format!("reading attributes {}", attrs.display()))?;
            g.attribute_partition(attribute)?
        }
        _ => bail!("provide exactly one of --partition FILE or --by-attribute NAME"),
    };
    let report = count_frustration(&g, &partition)?;
    println!(
        "partition with {} clusters on {} nodes",
        partition.cluster_count(),
        g.node_count()
    );
    println!(
        "frustrated edges: {} total = {} positive between clusters + {} negative within clusters",
        report.total,
        report.inter_cluster_positive,
        report.total - report.inter_cluster_positive
    );
    for (cluster, count) in &report.per_cluster_internal_negative {
        println!("  cluster {cluster}: {count} internal negative");
    }
    let prefix = prefix_for(&args.input, &args.out_prefix);
    let edges_file = with_suffix(&prefix, ".edges.csv");
    let file = File::create(&edges_file)
        .with_context(|| format!("creating {}", edges_file.display()))?;
    gio::write_edge_classification(BufWriter::new(file), &g, &report)?;
    println!("edge classification -> {}", edges_file.display());
    Ok(0)
}

fn run_export(args: ExportArgs) -> anyhow::Result<i32> {
    let g = load_graph(&args.input)?;
    let output = args
        .output
        .unwrap_or_else(|| args.input.with_extension("lp"));
    let file =
        File::create(&output).with_context(|| format!("creating {}", output.display()))?;
    let mut writer = BufWriter::new(file);
    match args.model {
        ModelArg::Eq1 => {
            let k = args.k.ok_or_else(|| anyhow!("--model eq1 requires --k"))?;
            milp::write_k_partition_model(&g, k, &mut writer)?;
        }
        ModelArg::Eq2 => {
            if args.k.is_some() {
                bail!("--k only applies to --model eq1");
            }
            milp::write_clustering_model(&g, &mut writer)?;
        }
    }
    println!("model -> {}", output.display());
    Ok(0)
}

fn run_import(args: ImportArgs) -> anyhow::Result<i32> {
    let g = load_graph(&args.input)?;
    let solution = std::fs::read_to_string(&args.solution)
        .with_context(|| format!("reading {}", args.solution.display()))?;
    let kind = match args.model {
        ModelArg::Eq1 => milp::ModelKind::KPartition,
        ModelArg::Eq2 => milp::ModelKind::Clustering,
    };
    let imported = milp::import_solution(&g, kind, &solution)?;
    println!(
        "verified solution: objective={} clusters={}",
        imported.objective,
        imported.partition.cluster_count()
    );
    let prefix = prefix_for(&args.input, &args.out_prefix);
    let partition_file = with_suffix(&prefix, ".partition.csv");
    let file = File::create(&partition_file)
        .with_context(|| format!("creating {}", partition_file.display()))?;
    gio::write_partition(BufWriter::new(file), &g, &imported.partition)?;
    println!("partition -> {}", partition_file.display());
    Ok(0)
}

fn run_stats(args: StatsArgs) -> anyhow::Result<i32> {
    let mut g = load_graph(&args.input)?;
    gio::load_attributes(&args.attributes, &mut g)
        .with_context(|| format!("reading attributes {}", args.attributes.display()))?;
    let partition = match (&args.partition, &args.by_attribute) {
        (Some(path), None) => gio::load_partition(path, &g)
            .with_context(|| format!("reading partition {}", path.display()))?,
        (None, Some(attribute)) => g.attribute_partition(attribute)?,
        _ => bail!("provide exactly one of --partition FILE or --by-attribute NAME"),
    };
    let stats = cluster_stats(&g, &partition)?;
    let attribution = match args.attribution {
        AttributionArg::PerEndpoint => EdgeAttribution::PerEndpoint,
        AttributionArg::Internal => EdgeAttribution::InternalOnly,
    };
    let mixes = edge_mix(&g, &partition, attribution)?;

    for s in &stats {
        println!(
            "cluster {}: size={} median-ideology={} mean-effectiveness={}",
            s.cluster,
            s.size,
            s.median_ideology.map_or("n/a".into(), |v| format!("{v:.3}")),
            s.mean_effectiveness.map_or("n/a".into(), |v| format!("{v:.3}")),
        );
    }
    for m in &mixes {
        println!(
            "cluster {}: neg:pos={} frac-neg-copartisan={} frac-pos-copartisan={}",
            m.cluster,
            m.negative_to_positive_ratio()
                .map_or("n/a".into(), |v| format!("{v:.2}")),
            m.fraction_negative_copartisan()
                .map_or("n/a".into(), |v| format!("{v:.3}")),
            m.fraction_positive_copartisan()
                .map_or("n/a".into(), |v| format!("{v:.3}")),
        );
    }

    let prefix = prefix_for(&args.input, &args.out_prefix);
    let stats_file = with_suffix(&prefix, ".cluster-stats.csv");
    let file = File::create(&stats_file)
        .with_context(|| format!("creating {}", stats_file.display()))?;
    gio::write_cluster_stats(BufWriter::new(file), &stats)?;
    let mix_file = with_suffix(&prefix, ".edge-mix.csv");
    let file =
        File::create(&mix_file).with_context(|| format!("creating {}", mix_file.display()))?;
    gio::write_edge_mix(BufWriter::new(file), &mixes)?;
    println!("cluster stats -> {}", stats_file.display());
    println!("edge mix -> {}", mix_file.display());
    Ok(0)
}
