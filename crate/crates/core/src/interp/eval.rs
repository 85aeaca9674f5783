//! Current and heat maps attached to 2-cells, and their compositional
//! evaluation over port graphs.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use thiserror::Error;

use crate::diagram::{Diagram, Src};
use crate::interp::expr::NatExpr;
use crate::signature::{CellId, CellKind, Signature};

/// Current (one expression per output) and heat of one 2-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellInterp {
    pub current: Vec<NatExpr>,
    pub heat: NatExpr,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpError {
    #[error("no interpretation for cell `{0}`")]
    Missing(String),
    #[error("interpretation of `{cell}` has {found} current components, expected {expected}")]
    Arity { cell: String, expected: usize, found: usize },
    #[error("expected {expected} input currents, got {found}")]
    Inputs { expected: usize, found: usize },
    #[error("diagram has a cycle")]
    Cycle,
    #[error("`{0}` is not a constructor")]
    NotAConstructor(String),
}

/// Interpretation of every 2-cell of a signature. Structure cells receive
/// their fixed currents and zero heat on creation.
#[derive(Clone, Debug)]
pub struct Interpretation {
    cells: BTreeMap<CellId, CellInterp>,
    constants: BTreeMap<CellId, u64>,
}

impl Interpretation {
    pub fn new(sig: &Signature) -> Self {
        let mut cells = BTreeMap::new();
        let (x, y) = (NatExpr::var(0), NatExpr::var(1));
        for (id, c) in sig.cells() {
            let current = match c.kind {
                CellKind::Tau(..) => vec![y.clone(), x.clone()],
                CellKind::Delta(_) => vec![x.clone(), x.clone()],
                CellKind::Eps(_) => vec![],
                _ => continue,
            };
            cells.insert(id, CellInterp { current, heat: NatExpr::constant(0) });
        }
        Interpretation { cells, constants: BTreeMap::new() }
    }

    /// Imposes `γ_* = Σ xᵢ + a` and `[γ] = 0`.
    pub fn set_constructor(&mut self, sig: &Signature, cell: CellId, a: u64) -> Result<(), InterpError> {
        let c = sig.cell(cell);
        if !c.is_constructor() {
            return Err(InterpError::NotAConstructor(c.name.clone()));
        }
        let current = NatExpr::add(NatExpr::sum((0..c.source.len()).map(NatExpr::var)), NatExpr::constant(a));
        self.cells.insert(cell, CellInterp { current: vec![current], heat: NatExpr::constant(0) });
        self.constants.insert(cell, a);
        Ok(())
    }

    /// Sets an arbitrary interpretation, replacing any previous one.
    pub fn set(&mut self, sig: &Signature, cell: CellId, interp: CellInterp) -> Result<(), InterpError> {
        let c = sig.cell(cell);
        if interp.current.len() != c.target.len() {
            return Err(InterpError::Arity {
                cell: c.name.clone(),
                expected: c.target.len(),
                found: interp.current.len(),
            });
        }
        self.constants.remove(&cell);
        self.cells.insert(cell, interp);
        Ok(())
    }

    pub fn get(&self, cell: CellId) -> Option<&CellInterp> {
        self.cells.get(&cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellId, &CellInterp)> + '_ {
        self.cells.iter().map(|(k, v)| (*k, v))
    }

    /// `a_γ` as entered, for constructors set through [`Self::set_constructor`].
    pub fn constructor_constant(&self, cell: CellId) -> Option<u64> {
        self.constants.get(&cell).copied()
    }

    /// Largest current of a nullary-input constructor evaluation at zero,
    /// i.e. the bound `a` on every `a_γ`.
    pub fn a(&self, sig: &Signature) -> u64 {
        sig.constructors()
            .filter_map(|(id, c)| {
                self.get(id).map(|ci| ci.current[0].eval(&vec![0; c.source.len()]))
            })
            .max()
            .unwrap_or(0)
    }

    /// Every cell of the signature is interpreted with matching arity.
    pub fn check_total(&self, sig: &Signature) -> Result<(), InterpError> {
        for (id, c) in sig.cells() {
            let ci = self.get(id).ok_or_else(|| InterpError::Missing(c.name.clone()))?;
            if ci.current.len() != c.target.len() {
                return Err(InterpError::Arity {
                    cell: c.name.clone(),
                    expected: c.target.len(),
                    found: ci.current.len(),
                });
            }
        }
        Ok(())
    }
}

/// Which heat to accumulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeatKind {
    /// `[φ]` from the interpretation.
    Interpreted,
    /// `[τ]_S(i,j) = ij`, `[δ]_S(i) = i²`, `[ε]_S(i) = i`, zero elsewhere.
    Structure,
}

/// Output currents and accumulated heat in one topological pass.
pub fn eval(
    sig: &Signature,
    d: &Diagram,
    interp: &Interpretation,
    inputs: &[u64],
    heat: HeatKind,
) -> Result<(Vec<u64>, u64), InterpError> {
    if inputs.len() != d.inputs().len() {
        return Err(InterpError::Inputs { expected: d.inputs().len(), found: inputs.len() });
    }
    let order = d.topo_order().map_err(|_| InterpError::Cycle)?;
    let mut wire: HashMap<Src, u64> = HashMap::default();
    let read = |wire: &HashMap<Src, u64>, s: &Src| match s {
        Src::Input(i) => inputs[*i],
        other => wire[other],
    };
    let mut total: u64 = 0;
    for n in order {
        let node = d.node(n).expect("ordered node exists");
        let cell = sig.cell(node.cell);
        let ci = interp.get(node.cell).ok_or_else(|| InterpError::Missing(cell.name.clone()))?;
        let args: Vec<u64> = node.inputs.iter().map(|s| read(&wire, s)).collect();
        for (p, e) in ci.current.iter().enumerate() {
            wire.insert(Src::Node(n, p), e.eval(&args));
        }
        let h = match heat {
            HeatKind::Interpreted => ci.heat.eval(&args),
            HeatKind::Structure => match cell.kind {
                CellKind::Tau(..) => args[0].saturating_mul(args[1]),
                CellKind::Delta(_) => args[0].saturating_mul(args[0]),
                CellKind::Eps(_) => args[0],
                _ => 0,
            },
        };
        total = total.saturating_add(h);
    }
    let outs = d.out_wires().iter().map(|s| read(&wire, s)).collect();
    Ok((outs, total))
}

pub fn eval_current(sig: &Signature, d: &Diagram, interp: &Interpretation, inputs: &[u64]) -> Result<Vec<u64>, InterpError> {
    eval(sig, d, interp, inputs, HeatKind::Interpreted).map(|r| r.0)
}

pub fn eval_heat(sig: &Signature, d: &Diagram, interp: &Interpretation, inputs: &[u64]) -> Result<u64, InterpError> {
    eval(sig, d, interp, inputs, HeatKind::Interpreted).map(|r| r.1)
}

pub fn structure_heat(sig: &Signature, d: &Diagram, interp: &Interpretation, inputs: &[u64]) -> Result<u64, InterpError> {
    eval(sig, d, interp, inputs, HeatKind::Structure).map(|r| r.1)
}

/// Currents and heat as expressions in the input variables.
pub fn eval_symbolic(
    sig: &Signature,
    d: &Diagram,
    interp: &Interpretation,
) -> Result<(Vec<NatExpr>, NatExpr), InterpError> {
    let order = d.topo_order().map_err(|_| InterpError::Cycle)?;
    let mut wire: HashMap<Src, NatExpr> = HashMap::default();
    let read = |wire: &HashMap<Src, NatExpr>, s: &Src| match s {
        Src::Input(i) => NatExpr::var(*i),
        other => wire[other].clone(),
    };
    let mut total = NatExpr::constant(0);
    for n in order {
        let node = d.node(n).expect("ordered node exists");
        let ci = interp
            .get(node.cell)
            .ok_or_else(|| InterpError::Missing(sig.cell(node.cell).name.clone()))?;
        let args: Vec<NatExpr> = node.inputs.iter().map(|s| read(&wire, s)).collect();
        for (p, e) in ci.current.iter().enumerate() {
            wire.insert(Src::Node(n, p), e.substitute(&args));
        }
        total = NatExpr::add(total, ci.heat.substitute(&args));
    }
    let outs = d.out_wires().iter().map(|s| read(&wire, s)).collect();
    Ok((outs, total))
}
