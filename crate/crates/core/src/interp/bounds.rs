//! Size and length bounds derived from a simple interpretation, and their
//! verification against instrumented runs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::Diagram;
use crate::engine::normalize::{normalize_observed, Observer, Step, Strategy};
use crate::engine::rule::RuleKind;
use crate::engine::{application, EngineError};
use crate::interp::check::{check_simple, shape_violations, Grid};
use crate::interp::eval::{eval, HeatKind, InterpError, Interpretation};
use crate::interp::expr::NatExpr;
use crate::par::Execution;
use crate::program::Program;
use crate::signature::{CellId, Signature};
use crate::value::{diagram_to_values, Value};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("interpretation is not simple: {}", .0.join("; "))]
    NotSimple(Vec<String>),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn scaled_inputs(sig: &Signature, interp: &Interpretation, phi: CellId) -> Vec<NatExpr> {
    let a = interp.a(sig);
    (0..sig.cell(phi).source.len())
        .map(|i| NatExpr::mul(NatExpr::constant(a), NatExpr::var(i)))
        .collect()
}

fn cell_interp<'a>(
    sig: &Signature,
    interp: &'a Interpretation,
    phi: CellId,
) -> Result<&'a crate::interp::eval::CellInterp, InterpError> {
    interp.get(phi).ok_or_else(|| InterpError::Missing(sig.cell(phi).name.clone()))
}

/// `P_φ = Σⱼ φ_*ʲ(a·x₁, …, a·xₘ)`
pub fn derive_p(sig: &Signature, interp: &Interpretation, phi: CellId) -> Result<NatExpr, InterpError> {
    let args = scaled_inputs(sig, interp, phi);
    let ci = cell_interp(sig, interp, phi)?;
    Ok(NatExpr::sum(ci.current.iter().map(|e| e.substitute(&args))))
}

/// `S_φ = K·P_φ²`
pub fn derive_s(prog: &Program, interp: &Interpretation, phi: CellId) -> Result<NatExpr, InterpError> {
    let p = derive_p(&prog.sig, interp, phi)?;
    Ok(NatExpr::mul(NatExpr::constant(prog.constant_k() as u64), NatExpr::pow(p, 2)))
}

/// `Q_φ = [φ](a·x₁, …, a·xₘ)`
pub fn derive_q(sig: &Signature, interp: &Interpretation, phi: CellId) -> Result<NatExpr, InterpError> {
    let args = scaled_inputs(sig, interp, phi);
    Ok(cell_interp(sig, interp, phi)?.heat.substitute(&args))
}

/// `R_φ = Q_φ·(1 + S_φ)`
pub fn derive_r(prog: &Program, interp: &Interpretation, phi: CellId) -> Result<NatExpr, InterpError> {
    let q = derive_q(&prog.sig, interp, phi)?;
    let s = derive_s(prog, interp, phi)?;
    Ok(NatExpr::mul(q, NatExpr::add(NatExpr::constant(1), s)))
}

/// Measurements of one intermediate 2-path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// `None` for the initial 2-path.
    pub rule: Option<String>,
    pub kind: Option<RuleKind>,
    pub heat: u64,
    pub structure_heat: u64,
    pub current_sum: u64,
    pub cells: usize,
}

/// Records heat, structure heat and output current of every 2-path seen.
pub struct HeatObserver<'a> {
    sig: &'a Signature,
    interp: &'a Interpretation,
    pub records: Vec<StepRecord>,
    pub error: Option<InterpError>,
}

impl<'a> HeatObserver<'a> {
    pub fn new(sig: &'a Signature, interp: &'a Interpretation) -> Self {
        HeatObserver { sig, interp, records: Vec::new(), error: None }
    }
}

impl Observer for HeatObserver<'_> {
    fn observe(&mut self, step: Option<&Step>, d: &Diagram) {
        if self.error.is_some() {
            return;
        }
        let zeros = vec![0; d.inputs().len()];
        let r = eval(self.sig, d, self.interp, &zeros, HeatKind::Interpreted).and_then(|(cur, heat)| {
            let (_, sh) = eval(self.sig, d, self.interp, &zeros, HeatKind::Structure)?;
            Ok(StepRecord {
                rule: step.map(|s| s.rule.clone()),
                kind: step.map(|s| s.kind),
                heat,
                structure_heat: sh,
                current_sum: cur.iter().fold(0u64, |a, b| a.saturating_add(*b)),
                cells: d.cell_count(),
            })
        });
        match r {
            Ok(rec) => self.records.push(rec),
            Err(e) => self.error = Some(e),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeatAudit {
    /// Total heat strictly decreases on every computation step.
    pub computation_strict: bool,
    /// Total heat does not increase on any structure step.
    pub structure_nonincreasing: bool,
    /// Structure heat strictly decreases on every structure step.
    pub structure_heat_strict: bool,
    /// First offending steps, at most a handful.
    pub failures: Vec<String>,
}

impl HeatAudit {
    pub fn from_records(records: &[StepRecord]) -> HeatAudit {
        let mut audit = HeatAudit {
            computation_strict: true,
            structure_nonincreasing: true,
            structure_heat_strict: true,
            failures: Vec::new(),
        };
        for (i, w) in records.windows(2).enumerate() {
            let (before, after) = (&w[0], &w[1]);
            let rule = after.rule.as_deref().unwrap_or("?");
            let mut fail = |msg: String| {
                if audit.failures.len() < 8 {
                    audit.failures.push(msg);
                }
            };
            match after.kind {
                Some(RuleKind::Computation) if after.heat >= before.heat => {
                    audit.computation_strict = false;
                    fail(format!("step {} ({rule}): heat {} -> {}", i + 1, before.heat, after.heat));
                }
                Some(RuleKind::Structure) => {
                    if after.heat > before.heat {
                        audit.structure_nonincreasing = false;
                        fail(format!("step {} ({rule}): heat {} -> {}", i + 1, before.heat, after.heat));
                    }
                    if after.structure_heat >= before.structure_heat {
                        audit.structure_heat_strict = false;
                        fail(format!(
                            "step {} ({rule}): structure heat {} -> {}",
                            i + 1,
                            before.structure_heat,
                            after.structure_heat
                        ));
                    }
                }
                _ => {}
            }
        }
        audit
    }

    pub fn holds(&self) -> bool {
        self.computation_strict && self.structure_nonincreasing && self.structure_heat_strict
    }
}

/// One inequality `measured <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub measured: u64,
    pub bound: u64,
    pub pass: bool,
}

impl BoundCheck {
    fn new(name: impl Into<String>, measured: u64, bound: u64) -> Self {
        BoundCheck { name: name.into(), measured, bound, pass: measured <= bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: String,
    pub function: String,
    pub sizes: Vec<u64>,
    pub a: u64,
    #[serde(rename = "K")]
    pub k_const: usize,
    pub p: String,
    pub s: String,
    pub q: String,
    pub r: String,
    /// The interpretation also passed the function-level simplicity
    /// conditions on the default grid.
    pub certified: bool,
    pub warnings: Vec<String>,
    pub k: usize,
    pub l: usize,
    pub length: usize,
    pub peak_current_sum: u64,
    pub completed: bool,
    pub checks: Vec<BoundCheck>,
    pub heat: HeatAudit,
    pub records: Vec<StepRecord>,
    pub all_pass: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct BoundOptions {
    pub strategy: Strategy,
    /// Hard cap on steps, applied on top of `R_φ + 1`.
    pub max_fuel: usize,
    pub grid: Grid,
    pub exec: Execution,
    /// Keep per-step records in the report.
    pub keep_records: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            strategy: Strategy::default(),
            max_fuel: 10_000_000,
            grid: Grid::default(),
            exec: Execution::default(),
            keep_records: false,
        }
    }
}

fn value_current(sig: &Signature, interp: &Interpretation, v: &Value) -> Result<u64, InterpError> {
    let d = v.to_diagram(sig).expect("values are well typed");
    Ok(eval(sig, &d, interp, &[], HeatKind::Interpreted)?.0[0])
}

/// Runs `φ(args)` and checks the five bounds against the measurements.
///
/// Requires the interpretation-level conditions the bounds rest on
/// (constructor and structure shape); failures of superadditivity or
/// compatibility are reported as warnings and leave `certified` false.
pub fn verify_bounds(
    prog: &Program,
    interp: &Interpretation,
    phi: CellId,
    args: &[Value],
    opts: &BoundOptions,
) -> Result<BoundReport, BoundsError> {
    let shape = shape_violations(&prog.sig, interp);
    if !shape.is_empty() {
        return Err(BoundsError::NotSimple(shape));
    }
    let warnings = check_simple(prog, interp, opts.grid, opts.exec).violations;
    verify_bounds_with(prog, interp, phi, args, opts, warnings)
}

/// [`verify_bounds`] with the certification outcome computed by the caller,
/// for batches over one program.
pub fn verify_bounds_with(
    prog: &Program,
    interp: &Interpretation,
    phi: CellId,
    args: &[Value],
    opts: &BoundOptions,
    warnings: Vec<String>,
) -> Result<BoundReport, BoundsError> {
    let sig = &prog.sig;
    let shape = shape_violations(sig, interp);
    if !shape.is_empty() {
        return Err(BoundsError::NotSimple(shape));
    }
    let a = interp.a(sig);
    let sizes: Vec<u64> = args.iter().map(|v| v.size() as u64).collect();
    let (p, s, q, r) = (
        derive_p(sig, interp, phi)?,
        derive_s(prog, interp, phi)?,
        derive_q(sig, interp, phi)?,
        derive_r(prog, interp, phi)?,
    );
    let (pv, sv, qv, rv) = (p.eval(&sizes), s.eval(&sizes), q.eval(&sizes), r.eval(&sizes));

    let start = application(prog, phi, args)?;
    let fuel = (rv as usize).saturating_add(1).min(opts.max_fuel);
    let mut obs = HeatObserver::new(sig, interp);
    let (final_diagram, trace, completed) = match normalize_observed(prog, &start, opts.strategy, fuel, &mut obs) {
        Ok((d, t)) => (d, t, true),
        Err(EngineError::FuelExhausted(t)) => (t.final_diagram.clone(), *t, false),
        Err(e) => return Err(e.into()),
    };
    if let Some(e) = obs.error.take() {
        return Err(e.into());
    }

    let mut checks = Vec::new();
    for (i, v) in args.iter().enumerate() {
        let cur = value_current(sig, interp, v)?;
        let size = v.size() as u64;
        checks.push(BoundCheck::new(format!("argument {i}: size <= current"), size, cur));
        checks.push(BoundCheck::new(format!("argument {i}: current <= a*size"), cur, a * size));
    }
    if completed {
        let outs = diagram_to_values(sig, &final_diagram).map_err(EngineError::from)?;
        for (j, v) in outs.iter().enumerate() {
            let cur = value_current(sig, interp, v)?;
            let size = v.size() as u64;
            checks.push(BoundCheck::new(format!("result {j}: size <= current"), size, cur));
            checks.push(BoundCheck::new(format!("result {j}: current <= a*size"), cur, a * size));
        }
    }
    let peak = obs.records.iter().map(|r| r.current_sum).max().unwrap_or(0);
    checks.push(BoundCheck::new("peak output current <= P", peak, pv));
    checks.push(BoundCheck::new("k <= Q", trace.k as u64, qv));
    checks.push(BoundCheck::new("l <= Q*S", trace.l as u64, qv.saturating_mul(sv)));
    checks.push(BoundCheck::new("length <= R", trace.length() as u64, rv));
    if !completed {
        checks.push(BoundCheck::new("run completed within the fuel", 1, 0));
    }

    let heat = HeatAudit::from_records(&obs.records);
    let all_pass = checks.iter().all(|c| c.pass);
    let show = |e: &NatExpr| e.normalize().to_string();
    Ok(BoundReport {
        schema: "polygraph.bounds/1".to_string(),
        function: sig.cell(phi).name.clone(),
        sizes,
        a,
        k_const: prog.constant_k(),
        p: show(&p),
        s: show(&s),
        q: show(&q),
        r: show(&r),
        certified: warnings.is_empty(),
        warnings,
        k: trace.k,
        l: trace.l,
        length: trace.length(),
        peak_current_sum: peak,
        completed,
        checks,
        heat,
        records: if opts.keep_records { obs.records } else { Vec::new() },
        all_pass,
    })
}
