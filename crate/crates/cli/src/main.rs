//! `boolnet`: regulatory graphs, transition graphs, attractors and theorem
//! checks for Boolean models in the `.bn` format.
//!
//! Exit codes: 0 success, 1 hypothesis not met, 2 usage or parse error,
//! 3 hypothesis met but a conclusion check failed, 4 state-space cap exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use boolnet::analysis::{attractor_report, attractors};
use boolnet::export;
use boolnet::genlab::{fig1_model, generate, GenKind, GenSpec};
use boolnet::netparse::{parse_model, serialize_model};
use boolnet::reggraph::extract_regulatory_graph;
use boolnet::{
    build_stg_capped, verify_inputs_theorem_with, verify_robert_with, BooleanModel, ComponentSet,
    Error, Exec, UpdateMode, VerifyOptions,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "boolnet",
    version,
    about = "Analyse Boolean models and check convergence theorems"
)]
struct Cli {
    /// Refuse to build transition graphs for models with more than N
    /// components (never above the built-in caps).
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,

    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the regulatory graph, B(S), nilpotency and a topological order or circuit.
    Rg {
        /// Model file, or '-' for standard input.
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the state transition graph.
    Stg {
        file: String,
        /// sync, async, full-async, gauss-seidel or custom:{1,2};{2,3}
        #[arg(long, default_value = "sync")]
        mode: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Print attractors, fixed points and basin sizes.
    Attractors {
        file: String,
        #[arg(long, default_value = "sync")]
        mode: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Check the circuit-free theorem, or with --inputs its input variant.
    Verify {
        file: String,
        #[arg(long, default_value = "sync")]
        mode: String,
        /// Comma-separated input components, by 1-based index or name.
        #[arg(long, value_delimiter = ',')]
        inputs: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Print a generated model in `.bn` format.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::CircuitFree)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Number of inputs, for --kind with-inputs.
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    CircuitFree,
    Arbitrary,
    WithInputs,
    Fig1,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_model(path: &str) -> Result<BooleanModel, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
    };
    parse_model(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn parse_inputs(model: &BooleanModel, items: &[String]) -> Result<ComponentSet, Failure> {
    let mut indices = Vec::new();
    for item in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let index = match item.parse::<usize>() {
            Ok(0) => return Err(usage("input indices are 1-based")),
            Ok(k) => k - 1,
            Err(_) => model
                .index_of(item)
                .ok_or_else(|| usage(format!("unknown component `{item}`")))?,
        };
        indices.push(index);
    }
    Ok(ComponentSet::from_indices(indices, model.n())?)
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let opts = VerifyOptions {
        exec,
        cap: cli.max_n,
    };
    match cli.command {
        Command::Rg { file, format } => {
            let model = read_model(&file)?;
            let rg = extract_regulatory_graph(&model);
            let out = match format {
                Format::Text => export::rg_text(&model, &rg),
                Format::Json => export::rg_json(&model, &rg),
                Format::Dot => export::rg_dot(&model, &rg),
            };
            Ok((out, 0))
        }
        Command::Stg { file, mode, format } => {
            let model = read_model(&file)?;
            let mode = UpdateMode::parse(&mode, model.n())?;
            let g = build_stg_capped(&model, &mode, exec, cli.max_n)?;
            let out = match format {
                GraphFormat::Dot => export::stg_dot(&g, &attractors(&g)),
                GraphFormat::Json => export::stg_json(&g),
            };
            Ok((out, 0))
        }
        Command::Attractors { file, mode, format } => {
            let model = read_model(&file)?;
            let mode = UpdateMode::parse(&mode, model.n())?;
            let g = build_stg_capped(&model, &mode, exec, cli.max_n)?;
            let report = attractor_report(&g);
            let out = match format {
                ReportFormat::Text => export::attractor_report_text(&report),
                ReportFormat::Json => export::attractor_report_json(&report),
            };
            Ok((out, 0))
        }
        Command::Verify {
            file,
            mode,
            inputs,
            format,
        } => {
            let model = read_model(&file)?;
            let mode = UpdateMode::parse(&mode, model.n())?;
            let report = match inputs {
                Some(items) => {
                    if mode != UpdateMode::Synchronous {
                        return Err(usage("--inputs checks synchronous dynamics only"));
                    }
                    let set = parse_inputs(&model, &items)?;
                    verify_inputs_theorem_with(&model, set, opts)?
                }
                None => verify_robert_with(&model, &mode, opts)?,
            };
            let out = match format {
                ReportFormat::Text => export::theorem_report_text(&report),
                ReportFormat::Json => export::theorem_report_json(&report),
            };
            let code = if !report.hypothesis_holds {
                1
            } else if report.conclusion_holds {
                0
            } else {
                3
            };
            Ok((out, code))
        }
        Command::Gen {
            kind,
            n,
            r,
            seed,
            density,
        } => {
            let (model, inputs) = match kind {
                Kind::Fig1 => (fig1_model(), ComponentSet::EMPTY),
                Kind::CircuitFree => generate(&GenSpec {
                    n,
                    seed,
                    kind: GenKind::CircuitFree { density },
                })?,
                Kind::Arbitrary => generate(&GenSpec {
                    n,
                    seed,
                    kind: GenKind::Arbitrary,
                })?,
                Kind::WithInputs => generate(&GenSpec {
                    n,
                    seed,
                    kind: GenKind::WithInputs { r, density },
                })?,
            };
            let mut out = String::new();
            if !inputs.is_empty() {
                let names: Vec<&str> = inputs.iter().map(|i| model.name(i)).collect();
                out.push_str(&format!("# inputs: {}\n", names.join(",")));
            }
            out.push_str(&serialize_model(&model));
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
