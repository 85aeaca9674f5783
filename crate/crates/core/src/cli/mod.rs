//! Command-line frontend.
//!
//! Exit codes: 0 on success (or when every checked property holds), 1 on
//! diagnostics or failed checks, 2 when fuel or an exploration budget runs
//! out.

pub mod export;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{self, Budget, EngineError, EvalOptions, Mode, Strategy};
use crate::interp::{check_simple, verify_bounds, BoundOptions, Grid, HeatObserver, Interpretation};
use crate::par::Execution;
use crate::program::Program;
use crate::suite::{compile_clocked_tm_ast, compile_tm_ast, TuringMachine};
use crate::syntax::{load, parse_nat_expr, parse_value, print, print_value};
use crate::value::{diagram_to_values, Value};

pub const EVAL_SCHEMA: &str = "polygraph.eval/1";
pub const CHECK_SCHEMA: &str = "polygraph.check/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTIC: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "polygraph", version, about = "Evaluate and analyse polygraphic programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Confluent,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Innermost,
    Outermost,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(clap::Args, Debug)]
pub struct RunArgs {
    /// Maximum number of rewriting steps.
    #[arg(long, default_value_t = 1_000_000)]
    pub fuel: usize,
    #[arg(long, value_enum, default_value = "innermost")]
    pub strategy: StrategyArg,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl RunArgs {
    fn strategy(&self) -> Strategy {
        match self.strategy {
            StrategyArg::Innermost => Strategy::LeftmostInnermost,
            StrategyArg::Outermost => Strategy::LeftmostOutermost,
            StrategyArg::Random => Strategy::Random(self.seed),
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct GridArgs {
    /// Grid bound B: variables range over 1..=B.
    #[arg(long = "grid", default_value_t = 8)]
    pub bound: u64,
    /// Let variables range over 0..=B instead.
    #[arg(long)]
    pub from_zero: bool,
}

impl GridArgs {
    fn grid(&self) -> Grid {
        Grid { bound: self.bound, from_zero: self.from_zero }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a function on values.
    Eval {
        file: PathBuf,
        function: String,
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "confluent")]
        mode: ModeArg,
        #[command(flatten)]
        run: RunArgs,
        /// Stop exhaustive search after this many distinct diagrams.
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check that the interpretation is simple and every rule compatible.
    Check {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run a function and compare the measured cost with the derived bounds.
    Bounds {
        file: PathBuf,
        function: String,
        args: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Include per-step heat records.
        #[arg(long)]
        records: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compile a Turing machine into a program file.
    CompileTm {
        machine: PathBuf,
        /// Clock polynomial in `n`, the input length.
        #[arg(long)]
        clock: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a diagram or a trace.
    Export {
        file: PathBuf,
        /// Function to apply; without it, `--rule` or `--identity` is required.
        function: Option<String>,
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Export the normal form instead of the initial diagram.
        #[arg(long, conflicts_with = "trace")]
        normal_form: bool,
        /// Export the reduction trace (JSON only).
        #[arg(long)]
        trace: bool,
        /// Export a rule's left side, or its right side with `--rhs`.
        #[arg(long, conflicts_with = "function")]
        rule: Option<String>,
        #[arg(long, requires = "rule")]
        rhs: bool,
        /// Export the identity on a comma-separated list of sorts.
        #[arg(long, conflicts_with_all = ["function", "rule"])]
        identity: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn diag(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_DIAGNOSTIC, message: message.into() }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = if e.is_exhaustion() { EXIT_EXHAUSTED } else { EXIT_DIAGNOSTIC };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| diag(format!("{}: {e}", path.display())))
}

fn load_file(path: &Path) -> Result<(Program, Interpretation), Failure> {
    let text = read(path)?;
    load(&text).map_err(|d| diag(format!("{}:{d}", path.display())))
}

fn parse_args(prog: &Program, function: &str, args: &[String]) -> Result<(crate::signature::CellId, Vec<Value>), Failure> {
    let id = prog.function(function).ok_or_else(|| diag(format!("unknown function `{function}`")))?;
    let source = prog.sig.cell(id).source.clone();
    if source.len() != args.len() {
        return Err(diag(format!("`{function}` takes {} arguments, got {}", source.len(), args.len())));
    }
    let values = args
        .iter()
        .zip(&source)
        .enumerate()
        .map(|(i, (a, s))| parse_value(prog, a, *s).map_err(|d| diag(format!("argument {}: {d}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((id, values))
}

fn show(prog: &Program, vs: &[Value]) -> Vec<String> {
    vs.iter().map(|v| print_value(prog, v)).collect()
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| diag(e.to_string()))?;
    writeln!(out, "{s}").map_err(|e| diag(e.to_string()))
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    write!(out, "{s}").map_err(|e| diag(e.to_string()))
}

#[derive(Serialize)]
struct EvalJson {
    schema: &'static str,
    function: String,
    args: Vec<String>,
    mode: &'static str,
    result: Vec<String>,
}

fn cmd(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Eval { file, function, args, mode, run, max_states, json } => {
            let (prog, _) = load_file(&file)?;
            let (id, values) = parse_args(&prog, &function, &args)?;
            let opts = EvalOptions {
                mode: match mode {
                    ModeArg::Confluent => Mode::Confluent,
                    ModeArg::Exhaustive => Mode::Exhaustive,
                },
                strategy: run.strategy(),
                fuel: run.fuel,
                budget: Budget { max_states, ..Budget::default() },
                exec: Execution::default(),
            };
            let result = show(&prog, &engine::evaluate(&prog, id, &values, &opts)?);
            if json {
                let mode = if opts.mode == Mode::Exhaustive { "exhaustive" } else { "confluent" };
                json_line(out, &EvalJson { schema: EVAL_SCHEMA, function, args, mode, result })?;
            } else {
                emit(out, &format!("{}\n", result.join(", ")))?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { file, grid, json } => {
            let (prog, interp) = load_file(&file)?;
            let report = check_simple(&prog, &interp, grid.grid(), Execution::default());
            if json {
                #[derive(Serialize)]
                struct Wrapped<'a> {
                    schema: &'static str,
                    program: &'a str,
                    #[serde(flatten)]
                    report: &'a crate::interp::SimpleReport,
                }
                json_line(out, &Wrapped { schema: CHECK_SCHEMA, program: &prog.name, report: &report })?;
            } else {
                let mut s = format!(
                    "program {}: {}\na = {}, K = {}, grid {} on {}\n",
                    prog.name,
                    if report.simple { "simple" } else { "not simple" },
                    report.a,
                    report.k,
                    report.grid_bound,
                    report.domain
                );
                for v in &report.violations {
                    s.push_str(&format!("violation: {v}\n"));
                }
                for r in &report.rules {
                    s.push_str(&format!("rule {}: {}", r.rule, r.result.label()));
                    if let Some(w) = witness(&r.result) {
                        s.push_str(&format!(
                            " at {:?}: current {:?} vs {:?}, heat {} vs {}",
                            w.point, w.lhs_current, w.rhs_current, w.lhs_heat, w.rhs_heat
                        ));
                    }
                    s.push('\n');
                }
                if !report.note.is_empty() {
                    s.push_str(&format!("note: {}\n", report.note));
                }
                emit(out, &s)?;
            }
            Ok(if report.simple { EXIT_OK } else { EXIT_DIAGNOSTIC })
        }
        Command::Bounds { file, function, args, run, grid, records, json } => {
            let (prog, interp) = load_file(&file)?;
            let (id, values) = parse_args(&prog, &function, &args)?;
            let opts = BoundOptions {
                strategy: run.strategy(),
                max_fuel: run.fuel,
                grid: grid.grid(),
                exec: Execution::default(),
                keep_records: records,
            };
            let report = verify_bounds(&prog, &interp, id, &values, &opts).map_err(|e| diag(e.to_string()))?;
            if json {
                json_line(out, &report)?;
            } else {
                let mut s = format!("{}({}) with sizes {:?}\n", function, args.join(", "), report.sizes);
                s.push_str(&format!("a = {}, K = {}, certified = {}\n", report.a, report.k_const, report.certified));
                for (n, p) in [("P", &report.p), ("S", &report.s), ("Q", &report.q), ("R", &report.r)] {
                    s.push_str(&format!("{n}_{function} = {p}\n"));
                }
                s.push_str(&format!(
                    "measured k = {}, l = {}, length = {}, peak current = {}\n",
                    report.k, report.l, report.length, report.peak_current_sum
                ));
                for c in &report.checks {
                    let mark = if c.pass { "ok  " } else { "FAIL" };
                    s.push_str(&format!("{mark} {}: {} <= {}\n", c.name, c.measured, c.bound));
                }
                for w in &report.warnings {
                    s.push_str(&format!("warning: {w}\n"));
                }
                if !report.completed {
                    s.push_str("run did not reach a normal form\n");
                }
                emit(out, &s)?;
            }
            Ok(if !report.completed {
                EXIT_EXHAUSTED
            } else if report.all_pass {
                EXIT_OK
            } else {
                EXIT_DIAGNOSTIC
            })
        }
        Command::CompileTm { machine, clock, output } => {
            let tm = TuringMachine::parse(&read(&machine)?).map_err(|e| diag(format!("{}: {e}", machine.display())))?;
            let ast = match clock {
                None => compile_tm_ast(&tm),
                Some(c) => {
                    let p = parse_nat_expr(&c, &["n".to_string()]).map_err(|e| diag(format!("--clock: {e}")))?;
                    compile_clocked_tm_ast(&tm, &p)
                }
            }
            .map_err(|e| diag(e.to_string()))?;
            let text = print::program(&ast);
            match output {
                Some(p) => std::fs::write(&p, text).map_err(|e| diag(format!("{}: {e}", p.display())))?,
                None => emit(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Export { file, function, args, format, normal_form, trace, rule, rhs, identity, run } => {
            let (prog, interp) = load_file(&file)?;
            let sig = &prog.sig;
            let render = |d: &crate::diagram::Diagram, out: &mut dyn Write| match format {
                Format::Json => json_line(out, &export::diagram_json(sig, d)),
                Format::Dot => emit(out, &export::diagram_dot(sig, d)),
            };
            if let Some(sorts) = identity {
                let ids = sorts
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| sig.sort_id(s).ok_or_else(|| diag(format!("unknown sort `{s}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                render(&crate::diagram::Diagram::identity(&ids), out)?;
                return Ok(EXIT_OK);
            }
            if let Some(name) = rule {
                let r = prog.rules().iter().find(|r| r.name == name).ok_or_else(|| diag(format!("unknown rule `{name}`")))?;
                render(if rhs { &r.rhs } else { &r.lhs }, out)?;
                return Ok(EXIT_OK);
            }
            let function = function.ok_or_else(|| diag("give a function, --rule or --identity"))?;
            let (id, values) = parse_args(&prog, &function, &args)?;
            let start = engine::application(&prog, id, &values)?;
            if trace {
                if matches!(format, Format::Dot) {
                    return Err(diag("traces export as JSON only"));
                }
                let mut obs = HeatObserver::new(sig, &interp);
                let (nf, tr) = engine::normalize_observed(&prog, &start, run.strategy(), run.fuel, &mut obs)?;
                // Without a complete interpretation the trace carries no heat.
                let records = if obs.error.is_some() { Vec::new() } else { obs.records };
                let result = diagram_to_values(sig, &nf).map(|v| show(&prog, &v)).map_err(EngineError::from)?;
                json_line(out, &export::trace_json(&function, args, &tr, &records, result))?;
            } else if normal_form {
                let (nf, _) = engine::normalize(&prog, &start, run.strategy(), run.fuel)?;
                render(&nf, out)?;
            } else {
                render(&start, out)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn witness(c: &crate::interp::Compatibility) -> Option<&crate::interp::Witness> {
    use crate::interp::Compatibility::*;
    match c {
        Compatible | WeaklyCompatible => None,
        Violation(w) => Some(w),
    }
}

/// Parses `args` (program name first) and runs the command. Output goes to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DIAGNOSTIC } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match cmd(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
