//! Polynomial interpretations: current and heat maps, compatibility and
//! simplicity checks, and the complexity bounds they yield.

pub mod bounds;
pub mod check;
pub mod eval;
pub mod expr;

pub use bounds::{
    derive_p, derive_q, derive_r, derive_s, verify_bounds, verify_bounds_with, BoundCheck, BoundOptions, BoundReport,
    BoundsError, HeatAudit, HeatObserver, StepRecord,
};
pub use check::{
    check_compatibility, check_simple, compare_diagrams, Compatibility, Grid, RuleStatus, SimpleReport, Witness,
};
pub use eval::{
    eval, eval_current, eval_heat, eval_symbolic, structure_heat, CellInterp, HeatKind, InterpError, Interpretation,
};
pub use expr::{NatExpr, Poly};
