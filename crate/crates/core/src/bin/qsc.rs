use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsupercong::catalog::{Check, RunConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use qsupercong::sweep::{self, Format, PlanEntry, Range, SweepPlan};
use qsupercong::verifier::{params_string, ParamValue, Params};

const EXIT_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_WRITE: u8 = 3;

#[derive(Parser)]
#[command(name = "qsc", version, about = "Exact verification of q-supercongruences and related identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check and print its result as JSON.
    Verify(VerifyArgs),
    /// Run a grid of checks and write a report.
    Sweep(SweepArgs),
    /// Print the catalog of checks.
    List,
}

#[derive(Args)]
struct Common {
    /// Evaluate in two prime fields instead of exact rationals.
    #[arg(long)]
    fast_mode: bool,
    /// Seed for random sample points and the fast-mode primes.
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points per randomized check.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    check: String,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Comma-separated list for KM, e.g. `2,0,1`.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<i64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON plan file.
    #[arg(long, conflicts_with_all = ["suite", "check"])]
    plan: Option<PathBuf>,
    /// Built-in suite, e.g. `paper-default`.
    #[arg(long)]
    suite: Option<String>,
    /// Check id for an inline grid.
    #[arg(long)]
    check: Option<String>,
    /// Ranges: a value, `lo..hi` (inclusive) or `a,b,c`.
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// KM: list lengths 1..=M.
    #[arg(long)]
    m_max: Option<i64>,
    /// KM: list entries 0..=N.
    #[arg(long)]
    nj_max: Option<i64>,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::List => run_list(),
    };
    ExitCode::from(code)
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("qsc: {msg}");
    EXIT_USAGE
}

fn emit(out: &Option<PathBuf>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), u8> {
    let res = match out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write(&mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    };
    res.map_err(|e| {
        eprintln!("qsc: write failed: {e}");
        EXIT_WRITE
    })
}

fn run_verify(a: VerifyArgs) -> u8 {
    let Some(check) = Check::from_id(&a.check) else {
        return usage(format!("unknown check `{}` (see `qsc list`)", a.check));
    };
    let mut args = Params::new();
    for (name, v) in [("d", a.d), ("r", a.r), ("n", a.n), ("p", a.p), ("j", a.j), ("k", a.k)] {
        if let Some(v) = v {
            args.insert(name.into(), ParamValue::Int(v));
        }
    }
    if let Some(list) = a.n_list {
        args.insert("n_list".into(), ParamValue::List(list));
    }
    let cfg = RunConfig {
        fast_mode: a.common.fast_mode,
        seed: a.common.seed.unwrap_or(DEFAULT_SEED),
        trials: a.common.trials.unwrap_or(DEFAULT_TRIALS),
    };
    let result = match check.run(&args, &cfg) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let format = a.common.format.map(Format::from).unwrap_or_default();
    let written = emit(&a.common.out, |w| match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &result)?;
            writeln!(w)
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(["id", "params", "status", "elapsed_ms"])?;
            c.write_record([
                result.id.clone(),
                params_string(&result.params),
                result.status.to_string(),
                format!("{:.3}", result.elapsed_ms),
            ])?;
            c.flush()
        }
    });
    match written {
        Err(code) => code,
        Ok(()) if result.fails() => EXIT_FAILS,
        Ok(()) => 0,
    }
}

fn build_plan(a: &SweepArgs) -> Result<SweepPlan, String> {
    let mut plan = match &a.plan {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str::<SweepPlan>(&text).map_err(|e| format!("bad plan {}: {e}", path.display()))?
        }
        None => SweepPlan::default(),
    };
    if let Some(s) = &a.suite {
        plan.suite = Some(s.clone());
    }
    if let Some(id) = &a.check {
        let mut entry = PlanEntry {
            check: id.clone(),
            ..PlanEntry::default()
        };
        let inline = [("d", &a.d), ("r", &a.r), ("n", &a.n), ("p", &a.p), ("j", &a.j), ("k", &a.k)];
        for (name, v) in inline {
            if let Some(v) = v {
                entry.ranges.insert(name.into(), Range::parse(v).map_err(|e| e.to_string())?);
            }
        }
        if let Some(m) = a.m_max {
            entry.ranges.insert("m".into(), Range::Span { from: 1, to: m });
        }
        if let Some(nj) = a.nj_max {
            entry.ranges.insert("n_j".into(), Range::Span { from: 0, to: nj });
        }
        plan.entries.push(entry);
    }
    let c = &a.common;
    plan.fast_mode |= c.fast_mode;
    if let Some(s) = c.seed {
        plan.seed = s;
    }
    if let Some(t) = c.trials {
        plan.trials = t;
    }
    if let Some(f) = c.format {
        plan.format = f.into();
    }
    Ok(plan)
}

fn run_sweep(a: SweepArgs) -> u8 {
    let plan = match build_plan(&a) {
        Ok(p) => p,
        Err(msg) => return usage(msg),
    };
    let instances = match plan.expand() {
        Ok(i) => i,
        Err(e) => return usage(e),
    };
    eprintln!("qsc: {} instances", instances.len());
    let report = match sweep::run_plan_instances(&plan, &instances) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let s = report.summary;
    eprintln!("qsc: {} holds, {} fails, {} skipped", s.holds, s.fails, s.skipped);
    if let Err(code) = emit(&a.common.out, |w| report.write(plan.format, w)) {
        return code;
    }
    if report.has_failures() {
        EXIT_FAILS
    } else {
        0
    }
}

fn run_list() -> u8 {
    let mut out = String::new();
    for c in Check::all() {
        let mut args: Vec<&str> = c.arg_names().to_vec();
        let optional: Vec<String> = c.optional_args().iter().map(|a| format!("[{a}]")).collect();
        args.extend(optional.iter().map(String::as_str));
        out.push_str(&format!("{:<24} {:<14} {}\n", c.id(), args.join(","), c.describe()));
    }
    match emit(&None, |w| w.write_all(out.as_bytes())) {
        Ok(()) => 0,
        Err(code) => code,
    }
}
