//! Command-line driver behind the `fastmatch` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gen::{erdos_renyi, power_law, LabelDist};
use crate::graph::{load_graph, Graph};
use crate::kernel::{CycleModel, KernelConfig, RoundTrace, Variant, DEFAULT_N_O};
use crate::oracle::brute_force_embeddings;
use crate::partition::{PartitionConfig, DEFAULT_DELTA_D, DEFAULT_DELTA_S, DEFAULT_PORT_MAX};
use crate::scheduler::{run_job, JobConfig, JobOutput, DEFAULT_DELTA};

#[derive(Debug, Parser)]
#[command(name = "fastmatch", version, about = "Subgraph matching with a simulated matching kernel")]
pub struct Cli {
    /// Emit JSON instead of CSV or plain text where a command supports both.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Match one query and print a JSON report.
    Run(RunArgs),
    /// Sweep variants, host shares and partition factors; print one row each.
    Compare(CompareArgs),
    /// Write a random labeled graph.
    Gen(GenArgs),
    /// Enumerate embeddings by brute force (small inputs only).
    #[command(hide = true)]
    Oracle(OracleArgs),
}

/// Execution mode: a kernel variant alone, or `share`, the separated kernel
/// plus host work sharing bounded by `--delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Basic,
    Task,
    Sep,
    Share,
}

impl Mode {
    pub fn variant(self) -> Variant {
        match self {
            Mode::Basic => Variant::Basic,
            Mode::Task => Variant::Task,
            Mode::Sep | Mode::Share => Variant::Sep,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Share => "share",
            other => other.variant().as_str(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LConsts(pub [f64; 6]);

impl FromStr for LConsts {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let values = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let arr: [f64; 6] = values
            .try_into()
            .map_err(|v: Vec<f64>| format!("expected 6 comma-separated constants, got {}", v.len()))?;
        Ok(LConsts(arr))
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub query: PathBuf,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// CST byte budget per partition.
    #[arg(long, default_value_t = DEFAULT_DELTA_S)]
    pub delta_s: usize,
    /// Budget on the longest adjacency list per partition.
    #[arg(long, default_value_t = DEFAULT_DELTA_D)]
    pub delta_d: usize,
    /// Kernel port limit; `--delta-d` may not exceed it.
    #[arg(long, default_value_t = DEFAULT_PORT_MAX)]
    pub port_max: usize,
    /// Per-round output cap `N_o`.
    #[arg(long = "no", default_value_t = DEFAULT_N_O)]
    pub n_o: usize,
    /// Cycle constants L1..L6.
    #[arg(long, value_name = "L1,L2,L3,L4,L5,L6", default_value = "2,2,1,1,1,1")]
    pub l_consts: LConsts,
    /// Multiply every cycle constant by this ratio (CST held in DRAM).
    #[arg(long, num_args = 0..=1, default_missing_value = "7")]
    pub dram_ratio: Option<f64>,
}

impl EngineArgs {
    fn model(&self) -> Result<CycleModel> {
        let model = CycleModel::new(self.l_consts.0)?;
        match self.dram_ratio {
            None => Ok(model),
            Some(r) if r.is_finite() && r >= 1.0 => Ok(model.scaled(r)),
            Some(r) => Err(Error::InvalidConfig(format!("dram ratio must be finite and >= 1, got {r}"))),
        }
    }

    fn job(&self, mode: Mode, delta: f64, k: Option<usize>) -> Result<JobConfig> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidConfig(format!("delta must lie in [0, 1], got {delta}")));
        }
        Ok(JobConfig {
            partition: PartitionConfig {
                delta_s: self.delta_s,
                delta_d: self.delta_d,
                port_max: self.port_max,
                fixed_k: k,
            },
            kernel: KernelConfig {
                variant: mode.variant(),
                n_o: self.n_o,
                port_max: Some(self.port_max),
                model: self.model()?,
            },
            delta: if mode == Mode::Share { delta } else { 0.0 },
        })
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Mode::Share)]
    pub variant: Mode,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Host share threshold (used by `share`).
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    /// Fixed partition factor (at least 2) instead of the computed one.
    #[arg(long)]
    pub k: Option<usize>,
    /// Write the per-round kernel trace as CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Host shares swept with the `share` mode.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.05, 0.1, 0.15, 0.2])]
    pub delta: Vec<f64>,
    /// Fixed partition factors swept with the `sep` mode.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 6, 8, 10])]
    pub k: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Vertex count.
    #[arg(long)]
    pub n: usize,
    /// Edge probability of a G(n, p) graph.
    #[arg(long, default_value_t = 0.1, conflicts_with = "exponent")]
    pub p: f64,
    /// Power-law degree exponent; switches to a Chung-Lu graph.
    #[arg(long)]
    pub exponent: Option<f64>,
    /// Mean degree of a power-law graph.
    #[arg(long, default_value_t = 6.0)]
    pub avg_degree: f64,
    #[arg(long, default_value_t = 4)]
    pub labels: usize,
    /// Zipf exponent for label frequencies of a power-law graph; 0 is uniform.
    #[arg(long, default_value_t = 0.0)]
    pub label_skew: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

/// One row of `compare`.
#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub variant: String,
    pub delta: f64,
    /// `auto` or the fixed partition factor.
    pub k: String,
    pub partitions: usize,
    pub cycles: f64,
    pub wall_ms: f64,
    pub embeddings: usize,
}

fn load_inputs(input: &InputArgs) -> Result<(Graph, Graph)> {
    Ok((load_graph(&input.data)?, load_graph(&input.query)?))
}

fn write_trace(path: &PathBuf, trace: &[RoundTrace]) -> Result<()> {
    let io = |source: std::io::Error| Error::Io {
        path: path.clone(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(|e| io(e.into()))?;
    for row in trace {
        writer.serialize(row).map_err(|e| io(e.into()))?;
    }
    if trace.is_empty() {
        writer
            .write_record(["round", "depth", "p_o", "t_v", "t_n", "accepted"])
            .map_err(|e| io(e.into()))?;
    }
    writer.flush().map_err(io)
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let (data, query) = load_inputs(&args.input)?;
    let cfg = args.engine.job(args.variant, args.delta, args.k)?;
    let JobOutput { mut stats, trace, .. } = run_job(&data, &query, &cfg)?;
    stats.variant = args.variant.as_str().to_string();
    if let Some(path) = &args.trace {
        write_trace(path, &trace)?;
    }
    print_json(out, &stats)
}

fn compare_row(data: &Graph, query: &Graph, engine: &EngineArgs, mode: Mode, delta: f64, k: Option<usize>) -> Result<CompareRow> {
    let cfg = engine.job(mode, delta, k)?;
    let stats = run_job(data, query, &cfg)?.stats;
    Ok(CompareRow {
        variant: mode.as_str().to_string(),
        delta: cfg.delta,
        k: k.map_or_else(|| "auto".to_string(), |k| k.to_string()),
        partitions: stats.partitions,
        cycles: stats.cycles,
        wall_ms: stats.wall_ms,
        embeddings: stats.embeddings,
    })
}

fn cmd_compare(args: &CompareArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let (data, query) = load_inputs(&args.input)?;
    let mut rows = Vec::new();
    for mode in [Mode::Basic, Mode::Task, Mode::Sep] {
        rows.push(compare_row(&data, &query, &args.engine, mode, 0.0, None)?);
    }
    for &delta in &args.delta {
        rows.push(compare_row(&data, &query, &args.engine, Mode::Share, delta, None)?);
    }
    for &k in &args.k {
        rows.push(compare_row(&data, &query, &args.engine, Mode::Sep, 0.0, Some(k))?);
    }
    if json {
        return print_json(out, &rows);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer
            .serialize(row)
            .map_err(|e| Error::InvalidConfig(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidConfig(format!("csv: {e}")))?;
    out.write_all(&bytes).map_err(stdout_error)
}

fn cmd_gen(args: &GenArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let graph = match args.exponent {
        Some(exponent) => {
            let dist = if args.label_skew > 0.0 {
                LabelDist::Zipf(args.label_skew)
            } else {
                LabelDist::Uniform
            };
            power_law(args.n, args.avg_degree, exponent, args.labels, dist, args.seed)?
        }
        None => erdos_renyi(args.n, args.p, args.labels, args.seed)?,
    };
    match &args.out {
        Some(path) => {
            crate::graph::save_graph(&graph, path)?;
            if json {
                print_json(
                    out,
                    &json!({
                        "path": path,
                        "vertices": graph.vertex_count(),
                        "edges": graph.edge_count(),
                    }),
                )?;
            }
            Ok(())
        }
        None => out.write_all(graph.to_text().as_bytes()).map_err(stdout_error),
    }
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<()> {
    let (data, query) = load_inputs(&args.input)?;
    let order: Vec<usize> = (0..query.vertex_count()).collect();
    let embeddings = brute_force_embeddings(&query, &data, &order)?;
    let tuples: Vec<&[u32]> = embeddings.iter().map(|e| e.as_slice()).collect();
    print_json(out, &json!({ "embeddings": embeddings.len(), "tuples": tuples }))
}

fn stdout_error(source: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn print_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{text}").map_err(stdout_error)
}

fn error_object(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Reports go to `out`; failures are reported there as
/// `{"error": {"kind", "message"}}` with a non-zero code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let message = e.render().to_string();
            let _ = writeln!(out, "{}", error_object("usage", message.trim()));
            return 2;
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args, out),
        Command::Compare(args) => cmd_compare(args, cli.json, out),
        Command::Gen(args) => cmd_gen(args, cli.json, out),
        Command::Oracle(args) => cmd_oracle(args, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(out, "{}", error_object(e.kind(), &e.to_string()));
            1
        }
    }
}
