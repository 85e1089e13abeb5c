use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use cubic_persistency::conditions::Condition;
use cubic_persistency::engine::{reduce, EngineConfig};
use cubic_persistency::experiment::{run_experiment, to_csv, ExperimentSpec, Generator, Sweep};
use cubic_persistency::generators::{gen_geometric, gen_partition, GeometricConfig, PartitionConfig};
use cubic_persistency::instance::{read_instance_file, to_cubic_multicut, write_instance, write_multicut};
use cubic_persistency::oracle::solve_exact;
use cubic_persistency::{Error, Result};

#[derive(Parser)]
#[command(name = "ccc", version, about = "Persistency for cubic correlation clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Apply the persistency conditions and write the event log, stats and
    /// the reduced instance.
    Reduce {
        input: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force minimum and one minimizer (at most 12 vertices).
    Exact {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the equivalent cubic multicut costs and constant.
    ConvertMulticut {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a data set and write median/quartile statistics as CSV.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    Partition {
        #[command(flatten)]
        params: PartitionArgs,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the planted partition, one block per line.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    Geometric {
        #[command(flatten)]
        params: GeometricArgs,
        #[arg(long, default_value_t = 0.1)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the point coordinates, one `x y` line per vertex.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExperimentKind {
    Partition {
        #[command(flatten)]
        params: PartitionArgs,
        /// Sweep alpha (keyed by `alpha`).
        #[arg(long, value_delimiter = ',', conflicts_with = "n_list")]
        alpha_list: Option<Vec<f64>>,
        /// Sweep n (keyed by `numberOfPoints` = 8n).
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        /// Fixed alpha for size sweeps.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    Geometric {
        #[command(flatten)]
        params: GeometricArgs,
        /// Sweep sigma (keyed by `sigma`).
        #[arg(long, value_delimiter = ',', conflicts_with = "m_list")]
        sigma_list: Option<Vec<f64>>,
        /// Sweep m (keyed by `numberOfPoints` = 9m).
        #[arg(long, value_delimiter = ',')]
        m_list: Option<Vec<usize>>,
        /// Fixed sigma for size sweeps.
        #[arg(long, default_value_t = 0.1)]
        sigma: f64,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct PartitionArgs {
    /// The graph has 8n vertices.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long = "pe", default_value_t = 1.0)]
    p_e: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
}

#[derive(Args)]
struct GeometricArgs {
    /// Points per triangle vertex.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Nearest and farthest neighbors per point, or `inf` for a complete graph.
    #[arg(long, default_value = "inf")]
    k: Neighbors,
}

#[derive(Args)]
struct EngineArgs {
    /// Comma list of conditions to enable (default: all).
    #[arg(long, value_delimiter = ',')]
    conditions: Option<Vec<Condition>>,
    #[arg(long, default_value_t = 0.0)]
    slack: f64,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[command(flatten)]
    engine: EngineArgs,
    /// Report durations as 0 so that the output is reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy)]
struct Neighbors(Option<usize>);

impl std::str::FromStr for Neighbors {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "inf" {
            return Ok(Neighbors(None));
        }
        s.parse()
            .map(|k| Neighbors(Some(k)))
            .map_err(|_| format!("expected a positive integer or 'inf', got '{s}'"))
    }
}

impl EngineArgs {
    fn config(&self) -> Result<EngineConfig> {
        let mut cfg = match &self.conditions {
            Some(list) => EngineConfig::only(list),
            None => EngineConfig::default(),
        };
        cfg.slack = self.slack;
        if let Some(t) = self.time_limit {
            cfg.time_limit = Some(
                Duration::try_from_secs_f64(t)
                    .map_err(|_| Error::InvalidConfig(format!("invalid time limit {t}")))?,
            );
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reduce_report(input: &PathBuf, engine: &EngineArgs) -> Result<String> {
    let inst = read_instance_file(input)?;
    let state = reduce(&inst, &engine.config()?)?;
    let fixed_edges = state.fixations().edges.len();
    let fixed_triples = state.triples_zero.len() + state.triples_one.len();
    let (reduced, groups) = state.reduced_instance()?;
    eprintln!("runtime_ns {}", state.runtime.as_nanos());

    let mut out = String::new();
    for line in state.event_log().lines() {
        writeln!(out, "# {line}").unwrap();
    }
    writeln!(
        out,
        "# stats edges {fixed_edges}/{} triples {fixed_triples}/{}{}",
        inst.edge_count(),
        inst.triple_count(),
        if state.timed_out { " timed_out" } else { "" }
    )
    .unwrap();
    for (v, g) in groups.iter().enumerate() {
        let members: Vec<String> = g.iter().map(usize::to_string).collect();
        writeln!(out, "# group {v} {}", members.join(",")).unwrap();
    }
    out.push_str(&write_instance(&reduced));
    Ok(out)
}

fn exact_report(input: &PathBuf) -> Result<String> {
    let inst = read_instance_file(input)?;
    let result = solve_exact(&inst)?;
    let x = &result.argmins[0];
    let clusters: Vec<String> = inst
        .partition_from_labeling(x)?
        .blocks()
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    Ok(format!(
        "minimum {}\nlabeling {}\nclusters {}\n",
        result.minimum,
        x,
        clusters.join(" ")
    ))
}

fn experiment(kind: &ExperimentKind) -> Result<()> {
    let (generator, sweep, values, run) = match kind {
        ExperimentKind::Partition { params, alpha_list, n_list, alpha, run } => {
            let generator = Generator::Partition { n: params.n, p_e: params.p_e, alpha: *alpha, beta: params.beta };
            match (alpha_list, n_list) {
                (_, Some(ns)) => (generator, Sweep::Size, ns.iter().map(|&n| n as f64).collect(), run),
                (Some(a), None) => (generator, Sweep::Alpha, a.clone(), run),
                (None, None) => return Err(Error::InvalidConfig("give --alpha-list or --n-list".into())),
            }
        }
        ExperimentKind::Geometric { params, sigma_list, m_list, sigma, run } => {
            let generator = Generator::Geometric { m: params.m, sigma: *sigma, k: params.k.0 };
            match (sigma_list, m_list) {
                (_, Some(ms)) => (generator, Sweep::Size, ms.iter().map(|&m| m as f64).collect(), run),
                (Some(s), None) => (generator, Sweep::Sigma, s.clone(), run),
                (None, None) => return Err(Error::InvalidConfig("give --sigma-list or --m-list".into())),
            }
        }
    };
    let spec = ExperimentSpec {
        generator,
        sweep,
        values,
        reps: run.reps,
        seed: run.seed,
        engine: run.engine.config()?,
        timing: !run.no_timing,
    };
    let rows = run_experiment(&spec)?;
    emit(&run.out, &to_csv(sweep, &rows))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { kind } => match kind {
            GenerateKind::Partition { params, alpha, seed, out, sidecar } => {
                let cfg = PartitionConfig { n: params.n, p_e: params.p_e, alpha, beta: params.beta, seed };
                let (inst, planted) = gen_partition(&cfg)?;
                if let Some(path) = &sidecar {
                    let mut text = String::new();
                    for b in planted.blocks() {
                        let members: Vec<String> = b.iter().map(usize::to_string).collect();
                        writeln!(text, "{}", members.join(" ")).unwrap();
                    }
                    emit(&Some(path.clone()), &text)?;
                }
                emit(&out, &write_instance(&inst))
            }
            GenerateKind::Geometric { params, sigma, seed, out, sidecar } => {
                let (inst, points) = gen_geometric(&GeometricConfig::new(params.m, sigma, params.k.0, seed))?;
                if let Some(path) = &sidecar {
                    let mut text = String::new();
                    for [x, y] in &points {
                        writeln!(text, "{x} {y}").unwrap();
                    }
                    emit(&Some(path.clone()), &text)?;
                }
                emit(&out, &write_instance(&inst))
            }
        },
        Command::Reduce { input, engine, out } => emit(&out, &reduce_report(&input, &engine)?),
        Command::Exact { input, out } => emit(&out, &exact_report(&input)?),
        Command::ConvertMulticut { input, out } => {
            let inst = read_instance_file(&input)?;
            emit(&out, &write_multicut(&to_cubic_multicut(&inst)))
        }
        Command::Experiment { kind } => experiment(&kind),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
