//! Rewriting: matching, strategies, traces, exhaustive search and the
//! input/output semantics of programs.

pub mod enumerate;
pub mod matching;
pub mod normalize;
pub mod rule;

use std::cmp::Ordering;

use thiserror::Error;

use crate::diagram::{Diagram, NodeId};
use crate::par::Execution;
use crate::program::Program;
use crate::signature::CellId;
use crate::value::{diagram_to_values, tuple_order, values_to_diagram, Value, ValueError};

pub use enumerate::{enumerate_normal_forms, Budget};
pub use matching::{apply, find_redexes, match_at, Match};
pub use normalize::{normalize, normalize_observed, Observer, Step, Strategy, Trace};
pub use rule::{CmpOp, Guard, LitPat, LitRef, Pattern, Rule, RuleKind};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("match anchored at {0:?} no longer applies")]
    StaleMatch(NodeId),
    #[error("fuel exhausted after {} steps", .0.steps.len())]
    FuelExhausted(Box<Trace>),
    #[error("exploration budget exhausted ({} normal forms found so far)", partial.len())]
    BudgetExhausted { partial: Vec<Diagram> },
    #[error("normal form is not a value: {0}")]
    NotAValue(#[from] ValueError),
    #[error("argument {position} has the wrong sort for `{function}`")]
    TypeMismatch { function: String, position: usize },
    #[error("cell {0:?} is not a function")]
    NotAFunction(CellId),
    #[error("no normal form found")]
    NoNormalForm,
}

impl EngineError {
    /// Resource exhaustion, as opposed to a malformed program or input.
    pub fn is_exhaustion(&self) -> bool {
        matches!(self, EngineError::FuelExhausted(_) | EngineError::BudgetExhausted { .. })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Normalise once; the program is assumed confluent.
    #[default]
    Confluent,
    /// Enumerate every normal form and return the largest.
    Exhaustive,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub mode: Mode,
    pub strategy: Strategy,
    pub fuel: usize,
    pub budget: Budget,
    pub exec: Execution,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            mode: Mode::Confluent,
            strategy: Strategy::default(),
            fuel: 1_000_000,
            budget: Budget::default(),
            exec: Execution::default(),
        }
    }
}

/// `(t₁ ⋆₀ … ⋆₀ tₘ) ⋆₁ φ`
pub fn application(prog: &Program, function: CellId, args: &[Value]) -> Result<Diagram, EngineError> {
    let sig = &prog.sig;
    let cell = sig.cell(function);
    if !cell.is_function() {
        return Err(EngineError::NotAFunction(function));
    }
    let mismatch = |position| EngineError::TypeMismatch { function: cell.name.clone(), position };
    if args.len() != cell.source.len() {
        return Err(mismatch(args.len().min(cell.source.len())));
    }
    for (i, (a, s)) in args.iter().zip(&cell.source).enumerate() {
        if a.sort(sig) != *s {
            return Err(mismatch(i));
        }
    }
    let input = values_to_diagram(sig, args).map_err(|_| mismatch(0))?;
    let head = Diagram::cell(sig, function, None).map_err(|_| mismatch(0))?;
    input.compose_sequential(&head).map_err(|_| mismatch(0))
}

/// Runs `function` on `args` and reads the result back as values.
pub fn evaluate(
    prog: &Program,
    function: CellId,
    args: &[Value],
    opts: &EvalOptions,
) -> Result<Vec<Value>, EngineError> {
    let start = application(prog, function, args)?;
    match opts.mode {
        Mode::Confluent => {
            let (nf, _) = normalize(prog, &start, opts.strategy, opts.fuel)?;
            Ok(diagram_to_values(&prog.sig, &nf)?)
        }
        Mode::Exhaustive => {
            let forms = enumerate_normal_forms(prog, &start, opts.budget, opts.exec)?;
            let mut best: Option<Vec<Value>> = None;
            for f in forms {
                let v = diagram_to_values(&prog.sig, &f)?;
                let better = match &best {
                    None => true,
                    Some(b) => tuple_order(&prog.sig, &v, b)? == Ordering::Greater,
                };
                if better {
                    best = Some(v);
                }
            }
            best.ok_or(EngineError::NoNormalForm)
        }
    }
}
