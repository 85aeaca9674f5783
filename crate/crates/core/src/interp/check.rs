//! Grid-based falsification of compatibility and simplicity.
//!
//! Every check evaluates both sides on all points of a finite grid. A pass
//! only means no counterexample exists up to the grid bound.

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::engine::rule::{Rule, RuleKind};
use crate::interp::eval::{eval, HeatKind, InterpError, Interpretation};
use crate::interp::expr::{NatExpr, Poly};
use crate::par::{self, Execution};
use crate::program::Program;
use crate::signature::{CellKind, Signature};

/// `{lo..=bound}^m` with `lo` = 1, or 0 when `from_zero`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub bound: u64,
    pub from_zero: bool,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { bound: 8, from_zero: false }
    }
}

impl Grid {
    pub fn new(bound: u64) -> Self {
        Grid { bound, from_zero: false }
    }

    fn lo(&self) -> u64 {
        if self.from_zero {
            0
        } else {
            1
        }
    }

    fn width(&self) -> u64 {
        (self.bound + 1).saturating_sub(self.lo())
    }

    /// Number of points in dimension `m`.
    pub fn size(&self, m: usize) -> u64 {
        self.width().saturating_pow(m as u32)
    }

    /// The `idx`-th point in lexicographic order, first coordinate most
    /// significant.
    pub fn point(&self, m: usize, mut idx: u64) -> Vec<u64> {
        let w = self.width().max(1);
        let mut p = vec![0; m];
        for slot in p.iter_mut().rev() {
            *slot = self.lo() + idx % w;
            idx /= w;
        }
        p
    }

    pub fn domain(&self) -> &'static str {
        if self.from_zero {
            "N"
        } else {
            "N+"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<u64>,
    pub lhs_current: Vec<u64>,
    pub rhs_current: Vec<u64>,
    pub lhs_heat: u64,
    pub rhs_heat: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Compatibility {
    /// Currents `≥` and heat `>` everywhere on the grid.
    Compatible,
    /// Currents `≥` and heat `≥` everywhere on the grid.
    WeaklyCompatible,
    /// Least grid point where even weak compatibility fails.
    Violation(Witness),
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible)
    }

    pub fn is_weakly_compatible(&self) -> bool {
        !matches!(self, Compatibility::Violation(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Compatibility::Compatible => "compatible",
            Compatibility::WeaklyCompatible => "weakly-compatible",
            Compatibility::Violation(_) => "violation",
        }
    }
}

/// Compares two diagrams with the same boundary over the grid.
pub fn compare_diagrams(
    sig: &Signature,
    lhs: &Diagram,
    rhs: &Diagram,
    interp: &Interpretation,
    grid: Grid,
    exec: Execution,
) -> Result<Compatibility, InterpError> {
    let m = lhs.inputs().len();
    let n = grid.size(m);
    // Surface missing interpretations before the parallel sweep.
    let origin = grid.point(m, 0);
    eval(sig, lhs, interp, &origin, HeatKind::Interpreted)?;
    eval(sig, rhs, interp, &origin, HeatKind::Interpreted)?;
    let at = |idx: u64| {
        let p = grid.point(m, idx);
        let (lc, lh) = eval(sig, lhs, interp, &p, HeatKind::Interpreted).expect("checked above");
        let (rc, rh) = eval(sig, rhs, interp, &p, HeatKind::Interpreted).expect("checked above");
        Witness { point: p, lhs_current: lc, rhs_current: rc, lhs_heat: lh, rhs_heat: rh }
    };
    let currents_ok = |w: &Witness| w.lhs_current.iter().zip(&w.rhs_current).all(|(a, b)| a >= b);
    if let Some(w) = par::find_first(exec, n, |i| {
        let w = at(i);
        (!currents_ok(&w) || w.lhs_heat < w.rhs_heat).then_some(w)
    }) {
        return Ok(Compatibility::Violation(w));
    }
    let strict_fails = par::find_first(exec, n, |i| {
        let w = at(i);
        (w.lhs_heat <= w.rhs_heat).then_some(())
    });
    Ok(match strict_fails {
        None => Compatibility::Compatible,
        Some(()) => Compatibility::WeaklyCompatible,
    })
}

pub fn check_compatibility(
    sig: &Signature,
    rule: &Rule,
    interp: &Interpretation,
    grid: Grid,
    exec: Execution,
) -> Result<Compatibility, InterpError> {
    compare_diagrams(sig, &rule.lhs, &rule.rhs, interp, grid, exec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleStatus {
    pub rule: String,
    #[serde(flatten)]
    pub result: Compatibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub simple: bool,
    /// The constructor conditions, structure conditions, polynomial
    /// shape and superadditivity all hold.
    pub interpretation_simple: bool,
    pub a: u64,
    #[serde(rename = "K")]
    pub k: usize,
    pub grid_bound: u64,
    pub domain: String,
    pub violations: Vec<String>,
    pub rules: Vec<RuleStatus>,
    pub note: String,
}

fn sum_poly(es: &[NatExpr]) -> Poly {
    Poly::from_expr(&NatExpr::sum(es.iter().cloned()))
}

/// Conditions on the interpretation alone that the size bounds depend on:
/// totality, constructor shape with `a_γ > 0` and zero heat, fixed
/// structure currents with zero heat.
pub fn shape_violations(sig: &Signature, interp: &Interpretation) -> Vec<String> {
    let mut out = Vec::new();
    for (id, c) in sig.cells() {
        let Some(ci) = interp.get(id) else {
            out.push(format!("`{}` has no interpretation", c.name));
            continue;
        };
        if ci.current.len() != c.target.len() {
            out.push(format!("`{}`: wrong number of current components", c.name));
            continue;
        }
        let m = c.source.len();
        let xs = || (0..m).map(NatExpr::var);
        match c.kind {
            CellKind::Constructor => {
                let a = ci.current[0].eval(&vec![0; m]);
                let expected = NatExpr::add(NatExpr::sum(xs()), NatExpr::constant(a));
                if a == 0 {
                    out.push(format!("constructor `{}`: a_γ > 0 fails (a_γ = 0)", c.name));
                }
                if ci.current[0].normalize() != expected.normalize() {
                    out.push(format!(
                        "constructor `{}`: current must be Σxᵢ + a_γ, found {}",
                        c.name,
                        ci.current[0].normalize()
                    ));
                }
                if !ci.heat.normalize().is_zero() {
                    out.push(format!("constructor `{}`: [γ]=0 fails, heat is {}", c.name, ci.heat.normalize()));
                }
            }
            CellKind::Tau(..) | CellKind::Delta(_) | CellKind::Eps(_) => {
                let fixed: Vec<Poly> = match c.kind {
                    CellKind::Tau(..) => vec![Poly::var(1), Poly::var(0)],
                    CellKind::Delta(_) => vec![Poly::var(0), Poly::var(0)],
                    _ => vec![],
                };
                let got: Vec<Poly> = ci.current.iter().map(NatExpr::normalize).collect();
                if got != fixed {
                    out.push(format!("structure cell `{}`: current differs from the fixed form", c.name));
                }
                if !ci.heat.normalize().is_zero() {
                    out.push(format!("structure cell `{}`: must produce no heat", c.name));
                }
            }
            CellKind::Function => {}
        }
    }
    out
}

/// Polynomial shape and superadditivity of every function interpretation.
pub fn function_violations(sig: &Signature, interp: &Interpretation, grid: Grid, exec: Execution) -> Vec<String> {
    let mut out = Vec::new();
    for (id, c) in sig.functions() {
        let Some(ci) = interp.get(id) else { continue };
        if !sum_poly(&ci.current).is_polynomial() {
            out.push(format!("function `{}`: Σ of currents {} is not in ℕ[x]", c.name, sum_poly(&ci.current)));
        }
        if !ci.heat.normalize().is_polynomial() {
            out.push(format!("function `{}`: heat {} is not in ℕ[x]", c.name, ci.heat.normalize()));
        }
        let m = c.source.len();
        let bad = par::find_first(exec, grid.size(m), |i| {
            let p = grid.point(m, i);
            let lhs = ci.current.iter().map(|e| e.eval(&p)).fold(0u64, u64::saturating_add);
            let rhs: u64 = p.iter().sum();
            (lhs < rhs).then_some((p, lhs))
        });
        if let Some((p, lhs)) = bad {
            out.push(format!(
                "function `{}`: superadditivity fails at {:?} (Σ currents = {} < {})",
                c.name,
                p,
                lhs,
                p.iter().sum::<u64>()
            ));
        }
    }
    out
}

pub fn check_simple(prog: &Program, interp: &Interpretation, grid: Grid, exec: Execution) -> SimpleReport {
    let sig = &prog.sig;
    let mut violations = shape_violations(sig, interp);
    violations.extend(function_violations(sig, interp, grid, exec));
    let interpretation_simple = violations.is_empty();
    let mut rules = Vec::new();
    let mut all_compatible = true;
    for r in prog.computation_rules() {
        debug_assert_eq!(r.kind, RuleKind::Computation);
        match check_compatibility(sig, r, interp, grid, exec) {
            Ok(result) => {
                if !result.is_compatible() {
                    all_compatible = false;
                    violations.push(format!("rule `{}`: {}", r.name, result.label()));
                }
                rules.push(RuleStatus { rule: r.name.clone(), result });
            }
            Err(e) => {
                all_compatible = false;
                violations.push(format!("rule `{}`: {e}", r.name));
            }
        }
    }
    SimpleReport {
        simple: interpretation_simple && all_compatible,
        interpretation_simple,
        a: interp.a(sig),
        k: prog.constant_k(),
        grid_bound: grid.bound,
        domain: grid.domain().to_string(),
        violations,
        rules,
        note: format!("checked on the grid {{{}..{}}}^m only; falsification, not proof", grid.lo(), grid.bound),
    }
}
