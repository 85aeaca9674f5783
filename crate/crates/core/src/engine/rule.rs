use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramBuilder, DiagramError, NodeId, Src};
use crate::signature::{CellId, Signature, SortId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    Computation,
    Structure,
}

/// Literal index position in a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LitPat {
    Exact(u64),
    Bind(usize),
}

/// Constructor pattern feeding one input of the head cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Pattern variable; becomes the input of the same index in both sides.
    Var(usize),
    Ctor { cell: CellId, lit: Option<LitPat>, args: Vec<Pattern> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CmpOp {
    Le,
    Lt,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LitRef {
    Binder(usize),
    Const(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Guard {
    pub lhs: LitRef,
    pub op: CmpOp,
    pub rhs: LitRef,
}

impl Guard {
    pub fn holds(&self, binds: &[u64]) -> bool {
        let get = |r: LitRef| match r {
            LitRef::Binder(i) => binds[i],
            LitRef::Const(c) => c,
        };
        let (a, b) = (get(self.lhs), get(self.rhs));
        match self.op {
            CmpOp::Le => a <= b,
            CmpOp::Lt => a < b,
            CmpOp::Eq => a == b,
        }
    }
}

/// A 3-cell. Computation rules have a function head; structure rules have a
/// structure-cell head with a constructor on one input.
#[derive(Clone, Debug)]
pub struct Rule {
    pub name: String,
    pub kind: RuleKind,
    pub head: CellId,
    pub args: Vec<Pattern>,
    pub binder_count: usize,
    pub guards: Vec<Guard>,
    pub lhs: Diagram,
    pub rhs: Diagram,
    /// Right-hand nodes whose literal index is copied from a binder.
    pub rhs_literals: Vec<(NodeId, usize)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule `{0}`: pattern variables must be linear and numbered left to right")]
    NonLinear(String),
    #[error("rule `{0}`: head cell has wrong kind for this rule")]
    HeadKind(String),
    #[error("rule `{name}`: boundaries differ ({detail})")]
    Boundary { name: String, detail: String },
    #[error("rule `{name}`: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("rule `{name}`: right-hand side invalid: {detail}")]
    Rhs { name: String, detail: String },
    #[error("rule `{0}`: binder used before being bound")]
    Binder(String),
}

impl Rule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        sig: &Signature,
        name: &str,
        kind: RuleKind,
        head: CellId,
        args: Vec<Pattern>,
        guards: Vec<Guard>,
        rhs: Diagram,
        rhs_literals: Vec<(NodeId, usize)>,
    ) -> Result<Rule, RuleError> {
        let head_cell = sig.cell(head);
        let ok_head = match kind {
            RuleKind::Computation => head_cell.is_function(),
            RuleKind::Structure => head_cell.is_structure(),
        };
        if !ok_head || head_cell.source.len() != args.len() {
            return Err(RuleError::HeadKind(name.to_string()));
        }
        let mut vars = Vec::new();
        let mut binders = Vec::new();
        for a in &args {
            collect(a, &mut vars, &mut binders);
        }
        if vars.iter().enumerate().any(|(i, v)| *v != i) {
            return Err(RuleError::NonLinear(name.to_string()));
        }
        let mut distinct = binders.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != binders.len() || distinct.iter().enumerate().any(|(i, b)| *b != i) {
            return Err(RuleError::NonLinear(name.to_string()));
        }
        let binder_count = binders.len();
        let guard_ok = guards.iter().all(|g| {
            [g.lhs, g.rhs].iter().all(|r| !matches!(r, LitRef::Binder(i) if *i >= binder_count))
        });
        if !guard_ok || rhs_literals.iter().any(|(_, b)| *b >= binder_count) {
            return Err(RuleError::Binder(name.to_string()));
        }

        // Input sorts of the pattern variables, in order.
        let mut var_sorts = vec![SortId(0); vars.len()];
        for (a, s) in args.iter().zip(&head_cell.source) {
            var_sort(sig, a, *s, &mut var_sorts);
        }
        let wrap = |source| RuleError::Diagram { name: name.to_string(), source };
        let mut b = DiagramBuilder::new(sig, &var_sorts);
        let mut wires = Vec::new();
        for a in &args {
            wires.push(build(sig, &mut b, a).map_err(wrap)?);
        }
        let outs = b.add(head, None, &wires).map_err(wrap)?;
        let lhs = b.finish(&outs);

        if lhs.inputs() != rhs.inputs() || lhs.outputs() != rhs.outputs() {
            return Err(RuleError::Boundary {
                name: name.to_string(),
                detail: format!(
                    "left {} => {}, right {} => {}",
                    sig.path_names(lhs.inputs()),
                    sig.path_names(lhs.outputs()),
                    sig.path_names(rhs.inputs()),
                    sig.path_names(rhs.outputs())
                ),
            });
        }
        if let Err(v) = rhs.validate(sig) {
            return Err(RuleError::Rhs { name: name.to_string(), detail: format!("{:?}", v) });
        }
        Ok(Rule {
            name: name.to_string(),
            kind,
            head,
            args,
            binder_count,
            guards,
            lhs,
            rhs,
            rhs_literals,
        })
    }

    pub fn var_count(&self) -> usize {
        self.lhs.inputs().len()
    }

    /// Number of structure cells on the right-hand side.
    pub fn structure_cells(&self, sig: &Signature) -> usize {
        self.rhs.nodes().filter(|(_, n)| sig.cell(n.cell).is_structure()).count()
    }

    /// Right-hand side with every binder set to the given literal indices.
    pub fn rhs_instance(&self, binds: &[u64]) -> Diagram {
        let mut d = self.rhs.clone();
        for (n, b) in &self.rhs_literals {
            if let Some(node) = d.node(*n).cloned() {
                let mut node = node;
                node.lit = Some(binds[*b]);
                d.insert_node(*n, node);
            }
        }
        d
    }

    /// Left-hand side with every binder set to the given literal indices.
    pub fn lhs_instance(&self, sig: &Signature, binds: &[u64]) -> Diagram {
        let mut b = DiagramBuilder::new(sig, self.lhs.inputs());
        let wires: Vec<Src> = self
            .args
            .iter()
            .map(|a| build_with(sig, &mut b, a, binds).expect("pattern already checked"))
            .collect();
        let outs = b.add(self.head, None, &wires).expect("pattern already checked");
        b.finish(&outs)
    }
}

fn collect(p: &Pattern, vars: &mut Vec<usize>, binders: &mut Vec<usize>) {
    match p {
        Pattern::Var(v) => vars.push(*v),
        Pattern::Ctor { lit, args, .. } => {
            if let Some(LitPat::Bind(b)) = lit {
                binders.push(*b);
            }
            for a in args {
                collect(a, vars, binders);
            }
        }
    }
}

fn var_sort(sig: &Signature, p: &Pattern, sort: SortId, out: &mut [SortId]) {
    match p {
        Pattern::Var(v) => out[*v] = sort,
        Pattern::Ctor { cell, args, .. } => {
            for (a, s) in args.iter().zip(&sig.cell(*cell).source) {
                var_sort(sig, a, *s, out);
            }
        }
    }
}

fn build(sig: &Signature, b: &mut DiagramBuilder<'_>, p: &Pattern) -> Result<Src, DiagramError> {
    build_with(sig, b, p, &[])
}

fn build_with(
    sig: &Signature,
    b: &mut DiagramBuilder<'_>,
    p: &Pattern,
    binds: &[u64],
) -> Result<Src, DiagramError> {
    match p {
        Pattern::Var(v) => Ok(Src::Input(*v)),
        Pattern::Ctor { cell, lit, args } => {
            let wires = args.iter().map(|a| build_with(sig, b, a, binds)).collect::<Result<Vec<_>, _>>()?;
            let lit = lit.map(|l| match l {
                LitPat::Exact(n) => n,
                LitPat::Bind(i) => binds.get(i).copied().unwrap_or(0),
            });
            b.add1(*cell, lit, &wires)
        }
    }
}
