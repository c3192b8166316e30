//! `sqwalk` command-line front end.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sqwalk::experiment::{
    run_cycle, run_search, run_torus, run_two_walkers, CycleConfig, ExperimentResult, InitialState,
    Sampling, SearchConfig, TorusConfig, TwoWalkerConfig,
};
use sqwalk::synthesis::{self, lower, LoweringOptions, Variant};
use sqwalk::walks::{self, InteractionMode, InteractionSpec, WalkSpec};
use sqwalk::Circuit;

#[derive(Parser)]
#[command(
    name = "sqwalk",
    version,
    about = "Staggered quantum walk circuits and simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample this many shots per recorded distribution.
    #[arg(long, global = true)]
    shots: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Qasm,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Standard,
    Alternative,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Standard => Variant::Standard,
            VariantArg::Alternative => Variant::Alternative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Marked,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    Perm,
    AltPerm,
    Mcz,
    Mcrz,
    SearchStep,
    CycleStep,
    TorusStep,
}

#[derive(Subcommand)]
enum Command {
    /// Walk on the 2^n-cycle.
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        /// basis:<k>, pair:<a>,<b> or uniform
        #[arg(long, default_value = "basis:0")]
        initial: InitialState,
    },
    /// Two walkers on one cycle with a phase interaction.
    TwoWalkers {
        #[arg(long, default_value_t = 2)]
        n_per_walker: usize,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        #[arg(long, default_value_t = PI)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Marked)]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        marked: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        /// pairpos:<x1>,<x2>
        #[arg(long, default_value = "pairpos:0,2")]
        initial: InitialState,
    },
    /// Walk on the 2^(n/2) x 2^(n/2) torus.
    Torus {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        /// basis:<k> or even-superposition
        #[arg(long, default_value = "basis:0")]
        initial: InitialState,
    },
    /// Search for vertex 0 on the complete graph.
    Search {
        #[arg(long)]
        n: usize,
        /// Defaults to the optimal round count.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        exact_reflection: bool,
    },
    /// Lower a builder and report CNOT count and depth.
    Gatecount(BuilderArgs),
    /// Lower a builder and print it as OpenQASM 2.0.
    EmitQasm(BuilderArgs),
}

#[derive(Args)]
struct BuilderArgs {
    #[arg(long, value_enum)]
    builder: Builder,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Control count for mcz and mcrz.
    #[arg(long, default_value_t = 3)]
    controls: usize,
    #[arg(long, default_value_t = FRAC_PI_4)]
    theta: f64,
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    variant: VariantArg,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    exact_reflection: bool,
}

enum Failure {
    Usage(String),
    Invariant(String),
    Io(anyhow::Error),
}

impl From<sqwalk::Error> for Failure {
    fn from(e: sqwalk::Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Invariant(e.to_string())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

fn build(args: &BuilderArgs) -> sqwalk::Result<Circuit> {
    let variant = args.variant.into();
    match args.builder {
        Builder::Perm => synthesis::increment_perm(args.n),
        Builder::AltPerm => synthesis::alt_increment(args.n),
        Builder::Mcz | Builder::Mcrz => {
            let m = args.controls;
            let controls: Vec<usize> = (0..m).collect();
            let gates = match args.builder {
                Builder::Mcz => synthesis::mcz(&controls, m)?,
                _ => synthesis::mcrz(args.theta, &controls, m)?,
            };
            Circuit::from_gates(m + 1, gates)
        }
        Builder::SearchStep => {
            let mut c = walks::reflection_r(args.n, args.exact_reflection)?;
            c.extend(&walks::grover_diffusion(args.n, args.exact_reflection)?)?;
            Ok(c)
        }
        Builder::CycleStep => walks::cycle_step(&WalkSpec::cycle(args.n, args.theta, variant, 1)),
        Builder::TorusStep => walks::torus_step(&WalkSpec::torus(args.n, args.theta, variant, 1)),
    }
}

fn builder_name(b: Builder) -> String {
    b.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn experiment_csv(r: &ExperimentResult) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["step", "outcome", "probability"];
    if r.counts.is_some() {
        header.push("count");
    }
    if r.coords.is_some() {
        header.extend(["row", "col"]);
    }
    w.write_record(&header)?;
    for (step, row) in r.probabilities.iter().enumerate() {
        for (outcome, p) in row.iter().enumerate() {
            let mut rec = vec![step.to_string(), outcome.to_string(), p.to_string()];
            if let Some(counts) = &r.counts {
                rec.push(counts[step][outcome].to_string());
            }
            if let Some(coords) = &r.coords {
                let (row, col) = coords[outcome];
                rec.extend([row.to_string(), col.to_string()]);
            }
            w.write_record(&rec)?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render_experiment(r: &ExperimentResult, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(r.to_json()? + "\n"),
        Format::Csv => Ok(experiment_csv(r)?),
        Format::Qasm => Err(Failure::Usage(
            "--format qasm is only available for emit-qasm".into(),
        )),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let common = &cli.common;
    let sampling = Sampling {
        shots: common.shots,
        seed: common.seed,
    };
    let result = match &cli.command {
        Command::Cycle {
            n,
            theta,
            steps,
            variant,
            initial,
        } => run_cycle(
            &CycleConfig {
                n: *n,
                theta: *theta,
                steps: *steps,
                variant: (*variant).into(),
                initial: *initial,
            },
            sampling,
        )?,
        Command::TwoWalkers {
            n_per_walker,
            theta,
            phi,
            mode,
            marked,
            steps,
            variant,
            initial,
        } => {
            let InitialState::PairPos(x1, x2) = *initial else {
                return Err(Failure::Usage(format!(
                    "two-walkers needs --initial pairpos:<x1>,<x2>, got {initial}"
                )));
            };
            let mode = match mode {
                ModeArg::Full => InteractionMode::Full,
                ModeArg::Marked => InteractionMode::Marked,
            };
            run_two_walkers(
                &TwoWalkerConfig {
                    n_per_walker: *n_per_walker,
                    theta: *theta,
                    interaction: InteractionSpec {
                        mode,
                        phi: *phi,
                        marked: *marked,
                    },
                    steps: *steps,
                    variant: (*variant).into(),
                    start: (x1, x2),
                },
                sampling,
            )?
        }
        Command::Torus {
            n,
            theta,
            steps,
            variant,
            initial,
        } => run_torus(
            &TorusConfig {
                n: *n,
                theta: *theta,
                steps: *steps,
                variant: (*variant).into(),
                initial: *initial,
            },
            sampling,
        )?,
        Command::Search {
            n,
            steps,
            exact_reflection,
        } => run_search(
            &SearchConfig {
                n: *n,
                steps: *steps,
                exact_reflection: *exact_reflection,
            },
            sampling,
        )?,
        Command::Gatecount(args) => {
            let c = lower(&build(args)?, &LoweringOptions::default())?;
            let (cnots, depth) = (c.cnot_count()?, c.depth());
            let name = builder_name(args.builder);
            return match common.format {
                Format::Json => {
                    let v = json!({
                        "builder": name,
                        "n_qubits": c.n_qubits(),
                        "gates": c.len(),
                        "cnot_count": cnots,
                        "depth": depth,
                    });
                    Ok(serde_json::to_string_pretty(&v).context("serialising report")? + "\n")
                }
                Format::Csv => Ok(format!(
                    "builder,n_qubits,gates,cnot_count,depth\n{name},{},{},{cnots},{depth}\n",
                    c.n_qubits(),
                    c.len()
                )),
                Format::Qasm => Ok(sqwalk::qasm::emit_qasm(&c)?),
            };
        }
        Command::EmitQasm(args) => {
            if common.format == Format::Csv {
                return Err(Failure::Usage("emit-qasm writes qasm or json only".into()));
            }
            let c = lower(&build(args)?, &LoweringOptions::default())?;
            let text = sqwalk::qasm::emit_qasm(&c)?;
            return match common.format {
                Format::Json => {
                    let v = json!({ "builder": builder_name(args.builder), "qasm": text });
                    Ok(serde_json::to_string_pretty(&v).context("serialising qasm")? + "\n")
                }
                _ => Ok(text),
            };
        }
    };
    render_experiment(&result, common.format)
}

fn write_output(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let mut f =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            f.write_all(text.as_bytes())?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|text| Ok(write_output(&text, cli.common.out.as_ref())?));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
