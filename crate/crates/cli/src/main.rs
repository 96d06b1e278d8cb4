//! `giglab`: attractors, general iteration graphs, stability metrics and
//! circuit checks from the command line.

mod commands;
mod error;
mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use giglab_core::gig::{ArcWeighting, ExportFormat, MultiplicityLabel};
use giglab_core::{Limits, Observation};

use commands::Context;
use error::CliError;
use report::{AnalysisReport, Outcome, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "giglab",
    version,
    about = "Boolean automata networks under block-sequential schedules"
)]
struct Cli {
    /// Print a structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Lift the size guards; prints a memory estimate first.
    #[arg(long, global = true)]
    force: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NetworkArgs {
    /// `pos:N`, `neg:N`, or one sign per arc such as `++-`.
    #[arg(value_name = "CIRCUIT", allow_hyphen_values = true)]
    circuit: Option<String>,
    /// Network file (JSON, or TOML by extension).
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List attractors under a schedule.
    Attractors {
        #[command(flatten)]
        network: NetworkArgs,
        /// Blocks separated by `;`, nodes by `,`; `*` is parallel, `seq` aligned sequential.
        #[arg(long, short, default_value = "*", allow_hyphen_values = true)]
        schedule: String,
        #[arg(long, value_enum, default_value_t = ObservationArg::Macro)]
        observation: ObservationArg,
    },
    /// Export the general iteration graph.
    Gig {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
        /// Write the graph here instead of standard output.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Group configurations by potential.
        #[arg(long)]
        layers: bool,
        /// When to label arcs with their multiplicity.
        #[arg(long, value_enum, default_value_t = MultiplicityArg::AboveOne)]
        multiplicity: MultiplicityArg,
    },
    /// Robustness and likeliness of a configuration set.
    Metrics {
        #[command(flatten)]
        network: NetworkArgs,
        /// Comma-separated binary configurations, or `@file` with one per line.
        #[arg(long, value_name = "SET")]
        set: String,
        #[arg(long, value_enum, default_value_t = WeightingArg::Labeled)]
        weighting: WeightingArg,
    },
    /// Check the layered structure of a circuit: `verify 6 pos` or `verify +-+`.
    Verify {
        #[arg(required = true, num_args = 1..=2, allow_hyphen_values = true, value_name = "TARGET")]
        target: Vec<String>,
    },
    /// Count block-sequential schedules.
    Count { n: usize },
    /// Limit cycles of the positive circuit under every schedule.
    Census { n: usize },
    /// Enumerate or canonicalize schedules.
    Schedules {
        #[command(subcommand)]
        action: SchedulesAction,
    },
}

#[derive(Subcommand)]
enum SchedulesAction {
    /// Every schedule of N nodes.
    Enumerate {
        n: usize,
        /// Only one representative per rotation class.
        #[arg(long)]
        canonical: bool,
    },
    /// Smallest rotation of a schedule.
    Canonicalize {
        schedule: String,
        /// Node count; inferred from the largest node id when omitted.
        #[arg(long, short)]
        nodes: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObservationArg {
    Macro,
    Block,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Graphml,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum MultiplicityArg {
    AboveOne,
    Always,
    Never,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightingArg {
    Labeled,
    Distinct,
}

fn run(cli: &Cli, ctx: &Context) -> Result<Outcome, CliError> {
    let load = |n: &NetworkArgs| source::load(n.circuit.as_deref(), n.file.as_deref());
    match &cli.command {
        Command::Attractors {
            network,
            schedule,
            observation,
        } => {
            let obs = match observation {
                ObservationArg::Macro => Observation::Macro,
                ObservationArg::Block => Observation::Block,
            };
            commands::attractors(ctx, &load(network)?, schedule, obs)
        }
        Command::Gig {
            network,
            format,
            output,
            layers,
            multiplicity,
        } => {
            let format = match format {
                FormatArg::Dot => ExportFormat::Dot,
                FormatArg::Graphml => ExportFormat::GraphMl,
                FormatArg::Jsonl => ExportFormat::Jsonl,
            };
            let multiplicity = match multiplicity {
                MultiplicityArg::AboveOne => MultiplicityLabel::AboveOne,
                MultiplicityArg::Always => MultiplicityLabel::Always,
                MultiplicityArg::Never => MultiplicityLabel::Never,
            };
            let options = commands::export_options(multiplicity, *layers);
            commands::gig(
                ctx,
                &load(network)?,
                format,
                options,
                output.as_deref(),
                cli.json,
            )
        }
        Command::Metrics {
            network,
            set,
            weighting,
        } => {
            let weighting = match weighting {
                WeightingArg::Labeled => ArcWeighting::Labeled,
                WeightingArg::Distinct => ArcWeighting::Distinct,
            };
            commands::metrics(ctx, &load(network)?, set, weighting)
        }
        Command::Verify { target } => commands::verify(ctx, &commands::verify_target(target)?),
        Command::Count { n } => commands::count(ctx, *n),
        Command::Census { n } => commands::census(ctx, *n),
        Command::Schedules { action } => match action {
            SchedulesAction::Enumerate { n, canonical } => {
                commands::schedules_enumerate(ctx, *n, *canonical)
            }
            SchedulesAction::Canonicalize { schedule, nodes } => {
                commands::schedules_canonicalize(schedule, *nodes)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();

    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("warning: cannot configure {k} threads: {e}");
        }
    }
    let ctx = Context {
        limits: if cli.force {
            Limits::forced()
        } else {
            Limits::from_env()
        },
        force: cli.force,
    };

    let start = Instant::now();
    let outcome = run(&cli, &ctx);
    let timing_ms = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);

    match outcome {
        Ok(out) => {
            let ok = out.failures.is_empty();
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if cli.json {
                let report = AnalysisReport {
                    schema_version: SCHEMA_VERSION,
                    command: &argv,
                    ok,
                    network: out.network.as_ref(),
                    warnings: &out.warnings,
                    result: &out.result,
                    failures: &out.failures,
                    error: None,
                    timing_ms,
                };
                println!("{}", report.to_json());
            } else {
                print!("{}", out.text);
                if let Some(ms) = timing_ms {
                    println!("time: {ms:.3} ms");
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let report = AnalysisReport {
                    schema_version: SCHEMA_VERSION,
                    command: &argv,
                    ok: false,
                    network: None,
                    warnings: &[],
                    result: &Value::Null,
                    failures: &[],
                    error: Some(&e),
                    timing_ms,
                };
                println!("{}", report.to_json());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
