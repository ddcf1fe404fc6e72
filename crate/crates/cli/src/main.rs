use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use csgk_core::harness::{
    evaluate, load_vectors, replay_vectors, run_all, run_suite, OutputFormat, RunConfig, SuiteId, VectorOp,
};
use csgk_core::Region;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "csgk", version, about = "Exact arithmetic and bounded checks for <a,b | aab = a, abb = b>")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// json or text
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// JSON file overriding the built-in defaults; flags override the file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// K,L,M caps, applied to every region-driven check
    #[arg(long, global = true)]
    region: Option<String>,
    /// restrict the tau-p checks to this prime
    #[arg(long, global = true)]
    p: Option<u64>,
    /// restrict the tau-p checks to this alpha
    #[arg(long, global = true)]
    alpha: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    C,
    Bicyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    R,
    L,
    H,
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum Topology {
    TauP,
    Ext,
    Zero,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a word to normal form
    Reduce {
        word: String,
        #[arg(long, value_enum, default_value = "c")]
        system: System,
    },
    /// Multiply two elements (k,l,m or i,j)
    Mul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value = "c")]
        system: System,
    },
    /// Product in the extension C:k,l,m / B:i,j, or with --zero in C:k,l,m / 0
    Star {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        zero: bool,
    },
    /// Image of k,l,m in the bicyclic monoid
    Hom {
        #[arg(long)]
        x: String,
    },
    /// Brute-force solutions of an equation over --region
    Solve {
        /// axb, xb, ax, lx:<k,l,m> or xr:<k,l,m>
        #[arg(long)]
        shape: String,
        #[arg(long)]
        rhs: String,
    },
    /// Bounded witness search for Green's relations or simplicity
    Green {
        #[arg(long, value_enum)]
        relation: Relation,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        maxlen: Option<usize>,
    },
    /// Truncated basic neighbourhood
    Nbhd {
        #[arg(long, value_enum)]
        topology: Topology,
        /// centre (omitted for the zero topology)
        #[arg(long)]
        x: Option<String>,
        /// index of the basic set (ext and zero)
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        lambda_max: Option<u64>,
        #[arg(long)]
        kcap: Option<u64>,
    },
    /// Exact tau-p distance
    Metric {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Run a named suite, or all of them
    Check { suite: String },
    /// Replay a JSONL vector file
    Replay { file: PathBuf },
}

struct Usage(String);

fn build_config(g: &GlobalOpts) -> Result<RunConfig, Usage> {
    let mut cfg = match &g.config {
        Some(path) => RunConfig::from_file(path).map_err(|e| Usage(e.to_string()))?,
        None => RunConfig::default(),
    };
    if let Some(f) = &g.format {
        cfg.format = f.parse().map_err(|e: csgk_core::harness::ConfigError| Usage(e.to_string()))?;
    }
    if let Some(w) = g.workers {
        cfg.workers = w;
    }
    if let Some(r) = &g.region {
        let r: Region = r.parse().map_err(|e| Usage(format!("--region: {e}")))?;
        cfg.set_region_everywhere(r);
    }
    if let Some(p) = g.p {
        cfg.primes = vec![p];
    }
    if let Some(a) = g.alpha {
        cfg.alpha_min = a;
        cfg.alpha_max = a;
    }
    cfg.validate().map_err(|e| Usage(e.to_string()))?;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, value: &Value) {
    match cfg.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        OutputFormat::Text => match value {
            Value::String(s) => println!("{s}"),
            Value::Array(items) => items.iter().for_each(|v| println!("{}", v.as_str().map_or(v.to_string(), String::from))),
            other => println!("{other}"),
        },
    }
}

/// Evaluate one vector op; `{"error": ...}` results are usage errors.
fn op(cfg: &RunConfig, op: VectorOp, args: Value) -> Result<Value, Usage> {
    let Value::Object(args) = args else { unreachable!("args are built as objects") };
    let v = evaluate(op, &args, cfg);
    match v.get("error") {
        Some(e) => Err(Usage(format!("{op}: {}", e.as_str().unwrap_or_default()))),
        None => Ok(v),
    }
}

fn run(cli: Cli) -> Result<u8, Usage> {
    let cfg = build_config(&cli.global)?;
    let region = cfg.region.to_string();
    let value = match cli.cmd {
        Command::Reduce { word, system: System::C } => {
            let w = op(&cfg, VectorOp::ReduceC, json!({ "w": word }))?;
            let n = op(&cfg, VectorOp::ToNormalC, json!({ "w": word }))?;
            json!({ "word": w, "normal": n })
        }
        Command::Reduce { word, system: System::Bicyclic } => {
            let n = op(&cfg, VectorOp::ToNormalB, json!({ "w": word }))?;
            json!({ "normal": n })
        }
        Command::Mul { x, y, system } => {
            let which = match system {
                System::C => VectorOp::MulC,
                System::Bicyclic => VectorOp::MulB,
            };
            op(&cfg, which, json!({ "x": x, "y": y }))?
        }
        Command::Star { x, y, zero } => {
            op(&cfg, if zero { VectorOp::ZeroMul } else { VectorOp::StarMul }, json!({ "x": x, "y": y }))?
        }
        Command::Hom { x } => op(&cfg, VectorOp::HomH, json!({ "x": x }))?,
        Command::Solve { shape, rhs } => {
            let set = op(&cfg, VectorOp::SolveEquation, json!({ "shape": shape, "rhs": rhs, "region": region }))?;
            json!({ "shape": shape, "rhs": rhs, "region": region, "solutions": set })
        }
        Command::Green { relation, x, y, maxlen } => {
            let maxlen = maxlen.unwrap_or(cfg.witness_maxlen);
            let mut args = json!({ "x": x, "y": y, "maxlen": maxlen });
            match relation {
                Relation::R | Relation::L => {
                    args["side"] = json!(if matches!(relation, Relation::R) { "R" } else { "L" });
                    json!({ "witness": op(&cfg, VectorOp::GreenWitness, args)?, "maxlen": maxlen })
                }
                Relation::H => json!({ "h_related": op(&cfg, VectorOp::HRelated, args)?, "maxlen": maxlen }),
                Relation::Simple => op(&cfg, VectorOp::SimpleWitness, args)?,
            }
        }
        Command::Nbhd { topology, x, n, lambda_max, kcap } => {
            let need_x = || x.clone().ok_or_else(|| Usage("--x is required".into()));
            match topology {
                Topology::TauP => {
                    let p = cfg.primes[0];
                    let alpha = cfg.alpha_min;
                    let lambda_max = lambda_max.unwrap_or(cfg.lambda_factor * p.pow(alpha));
                    op(&cfg, VectorOp::NbhdTauP, json!({ "x": need_x()?, "p": p, "alpha": alpha, "lambda_max": lambda_max }))?
                }
                Topology::Ext => {
                    let n = n.unwrap_or(1);
                    op(&cfg, VectorOp::NbhdExt, json!({ "x": need_x()?, "n": n, "kcap": kcap.unwrap_or(n + 6) }))?
                }
                Topology::Zero => op(&cfg, VectorOp::NbhdZero, json!({ "n": n.unwrap_or(1), "region": region }))?,
            }
        }
        Command::Metric { x, y } => {
            let p = cfg.primes[0];
            json!({ "p": p, "distance": op(&cfg, VectorOp::MetricTauP, json!({ "x": x, "y": y, "p": p }))? })
        }
        Command::Check { suite } => return check(&cfg, &suite),
        Command::Replay { file } => {
            let records = load_vectors(&file).map_err(|e| Usage(format!("{}: {e}", e.code())))?;
            let report = replay_vectors(&records, &cfg);
            match cfg.format {
                OutputFormat::Json => emit(&cfg, &serde_json::to_value(&report).expect("serializable")),
                OutputFormat::Text => {
                    report.failures.iter().for_each(|f| println!("MISMATCH {}", f.detail));
                    println!("{}", report.summary_line());
                }
            }
            return Ok(if report.ok() { 0 } else { EXIT_FAIL });
        }
    };
    emit(&cfg, &value);
    Ok(0)
}

fn check(cfg: &RunConfig, suite: &str) -> Result<u8, Usage> {
    let reports = if suite == "all" {
        let summary = run_all(cfg);
        if cfg.format == OutputFormat::Json {
            emit(cfg, &serde_json::to_value(&summary).expect("serializable"));
            return Ok(if summary.passed { 0 } else { EXIT_FAIL });
        }
        summary.suites
    } else {
        let id: SuiteId = suite.parse().map_err(|e| Usage(format!("{e}")))?;
        let report = run_suite(id, cfg);
        if cfg.format == OutputFormat::Json {
            emit(cfg, &serde_json::to_value(&report).expect("serializable"));
            return Ok(if report.passed { 0 } else { EXIT_FAIL });
        }
        vec![report]
    };
    for r in &reports {
        println!("{:<17} {}", r.suite.name(), r.report.summary_line());
        for d in &r.paper_discrepancies {
            println!("{:<17} DISCREPANCY {}: stated {}, computed {}", "", d.id, d.stated, d.computed);
        }
    }
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("csgk: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
