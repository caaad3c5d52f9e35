use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use netalg::{parse_env, parse_streams, parse_term, print_streams, ParseError};
use netalg_core::axioms::{check_catalog, differential_suite, CheckConfig, Model};
use netalg_core::derived::build_regular;
use netalg_core::normal::{iso_equal, nf_to_term, to_normal_form};
use netalg_core::procsim::{instantiate, Scheduler};
use netalg_core::{streamsem, CellDef, CellEnv, Datum, Sort, Term, Trace};

#[derive(Parser)]
#[command(
    name = "netalg",
    version,
    about = "Network algebra terms: sorts, normal forms, stream semantics and axiom checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct EnvArg {
    /// JSON environment document with the data domain and the cells
    #[arg(long)]
    env: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SyncModel {
    Stream,
    Proc,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnyModel {
    Rel,
    Stream,
    Proc,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchedulerArg {
    Fifo,
    Lifo,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print it in canonical form
    Parse {
        /// Term text, or @FILE to read it from a file
        term: String,
    },
    /// Print the sort `m -> n` of a term
    Typecheck {
        term: String,
        #[command(flatten)]
        env: EnvArg,
    },
    /// Print the normal-form term
    Normalize {
        term: String,
        #[command(flatten)]
        env: EnvArg,
    },
    /// Decide whether two terms have isomorphic normal forms
    Iso {
        left: String,
        right: String,
        #[command(flatten)]
        env: EnvArg,
    },
    /// Evaluate a term on input streams
    Eval {
        term: String,
        #[command(flatten)]
        env: EnvArg,
        /// Stream file with lines `port: token*`
        #[arg(long)]
        inputs: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        ticks: usize,
        #[arg(long, value_enum, default_value = "stream")]
        model: SyncModel,
    },
    /// Run the process simulator, optionally printing its event log
    Simulate {
        term: String,
        #[command(flatten)]
        env: EnvArg,
        #[arg(long)]
        inputs: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        ticks: usize,
        /// Delivery order of messages within a time slice
        #[arg(long, value_enum, default_value = "fifo")]
        scheduler: SchedulerArg,
        /// Seed of the random scheduler
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the event log after the output streams
        #[arg(long)]
        events: bool,
    },
    /// Check the axiom catalog in a model
    Axioms {
        #[arg(long, value_enum)]
        model: AnyModel,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Carrier size for relations, data domain size for streams
        #[arg(long, default_value_t = 2)]
        domain_size: usize,
        #[arg(long, default_value_t = 16)]
        ticks: usize,
        /// Restrict to one table (1 basic, 2 flowchart originals, 3 synchronous)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: Option<u8>,
    },
    /// Compare the stream model, the process simulator and normal forms on random networks
    Diff {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Size budget of the random terms
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = 16)]
        ticks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print example networks
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// The regular grid network r_{k,l} over a 2 -> 2 cell
    Regular {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Name of the 2 -> 2 cell
        #[arg(long, default_value = "f")]
        cell: String,
        #[command(flatten)]
        env: EnvArg,
    },
}

/// Failure with its exit code: 1 for semantic failures, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<netalg_core::Error> for Failure {
    fn from(e: netalg_core::Error) -> Self {
        let code = match e {
            netalg_core::Error::SlotCollision { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn term_arg(text: &str) -> Result<Term, Failure> {
    match text.strip_prefix('@') {
        Some(path) => Ok(parse_term(read(Path::new(path))?.trim())?),
        None => Ok(parse_term(text)?),
    }
}

fn load_env(arg: &EnvArg) -> Result<CellEnv, Failure> {
    match &arg.env {
        Some(path) => Ok(parse_env(&read(path)?)?),
        None => Ok(CellEnv::default()),
    }
}

fn load_inputs(
    path: Option<&PathBuf>,
    t: &Term,
    env: &CellEnv,
    ticks: usize,
) -> Result<Vec<netalg_core::Stream>, Failure> {
    let m = t.sort_of(env)?.inputs;
    let text = match path {
        Some(p) => read(p)?,
        None => String::new(),
    };
    Ok(parse_streams(&text, m, ticks, env)?)
}

fn print_trace(trace: Trace, ticks: usize, env: &CellEnv) -> Result<(), Failure> {
    print!("{}", print_streams(&trace.outputs, ticks, env));
    trace.into_result()?;
    Ok(())
}

/// Environment of the regular-network demo: a swapping cell over {0, 1}.
fn demo_env(cell: &str) -> CellEnv {
    let mut env = CellEnv::numeric(2).expect("nonempty");
    let swap = CellDef::from_fn(Sort::new(2, 2), 2, vec![Datum(0), Datum(0)], |x| {
        vec![x[1], x[0]]
    })
    .expect("well-formed");
    env.insert(cell.into(), swap).expect("fresh");
    env
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Parse { term } => println!("{}", term_arg(&term)?),
        Command::Typecheck { term, env } => {
            let env = load_env(&env)?;
            println!("{}", term_arg(&term)?.sort_of(&env)?);
        }
        Command::Normalize { term, env } => {
            let env = load_env(&env)?;
            println!("{}", nf_to_term(&to_normal_form(&term_arg(&term)?, &env)?));
        }
        Command::Iso { left, right, env } => {
            let env = load_env(&env)?;
            let a = to_normal_form(&term_arg(&left)?, &env)?;
            let b = to_normal_form(&term_arg(&right)?, &env)?;
            if iso_equal(&a, &b) {
                println!("ISO");
            } else {
                println!("NOT-ISO");
                return Err(Failure {
                    code: 1,
                    message: String::new(),
                });
            }
        }
        Command::Eval {
            term,
            env,
            inputs,
            ticks,
            model,
        } => {
            let env = load_env(&env)?;
            let t = term_arg(&term)?;
            let inputs = load_inputs(inputs.as_ref(), &t, &env, ticks)?;
            let trace = match model {
                SyncModel::Stream => streamsem::trace(&t, &env, &inputs, ticks)?,
                SyncModel::Proc => netalg_core::procsim::trace(&t, &env, &inputs, ticks)?,
            };
            print_trace(trace, ticks, &env)?;
        }
        Command::Simulate {
            term,
            env,
            inputs,
            ticks,
            scheduler,
            seed,
            events,
        } => {
            let env = load_env(&env)?;
            let t = term_arg(&term)?;
            let inputs = load_inputs(inputs.as_ref(), &t, &env, ticks)?;
            let scheduler = match scheduler {
                SchedulerArg::Fifo => Scheduler::Fifo,
                SchedulerArg::Lifo => Scheduler::Lifo,
                SchedulerArg::Random => Scheduler::Random(seed),
            };
            let result = instantiate(&t, &env)?.run(&inputs, ticks, scheduler)?;
            print!("{}", print_streams(&result.trace.outputs, ticks, &env));
            if events {
                for e in &result.events {
                    println!("{e}");
                }
            }
            result.trace.into_result()?;
        }
        Command::Axioms {
            model,
            trials,
            seed,
            domain_size,
            ticks,
            table,
        } => {
            let model = match model {
                AnyModel::Rel => Model::Rel,
                AnyModel::Stream => Model::Stream,
                AnyModel::Proc => Model::Proc,
            };
            let cfg = CheckConfig {
                trials,
                domain_size,
                horizon: ticks,
                ..CheckConfig::for_model(model)
            };
            let tables: Vec<u8> = table.into_iter().collect();
            let reports = check_catalog(model, &cfg, seed, &tables)?;
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().any(|r| !r.passed) {
                return Err(Failure {
                    code: 1,
                    message: String::new(),
                });
            }
        }
        Command::Diff {
            count,
            size,
            ticks,
            seed,
        } => {
            let report = differential_suite(count, size, ticks, seed)?;
            print!("{report}");
            if !report.divergences.is_empty() {
                return Err(Failure {
                    code: 1,
                    message: String::new(),
                });
            }
        }
        Command::Demo {
            which: Demo::Regular { k, l, cell, env },
        } => {
            let env = match &env.env {
                Some(_) => load_env(&env)?,
                None => demo_env(&cell),
            };
            println!("{}", build_regular(k, l, &cell, &env)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
