//! Closed constructor terms and conversion to and from diagrams.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramBuilder, DiagramError, Src};
use crate::signature::{CellId, Signature, SortId};

/// A value: a tree of constructors. Multi-output values are `Vec<Value>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Value {
    pub cell: CellId,
    pub lit: Option<u64>,
    pub args: Vec<Value>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValueError {
    #[error("output {0} is not built from constructors only")]
    NotAValue(usize),
    #[error("values of different sorts cannot be compared")]
    TypeMismatch,
}

impl Value {
    pub fn leaf(cell: CellId) -> Self {
        Value { cell, lit: None, args: vec![] }
    }

    pub fn literal(cell: CellId, n: u64) -> Self {
        Value { cell, lit: Some(n), args: vec![] }
    }

    pub fn apply(cell: CellId, args: Vec<Value>) -> Self {
        Value { cell, lit: None, args }
    }

    pub fn sort(&self, sig: &Signature) -> SortId {
        sig.cell(self.cell).target[0]
    }

    /// Number of constructors, ‖t‖.
    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Value::size).sum::<usize>()
    }

    pub fn to_diagram(&self, sig: &Signature) -> Result<Diagram, DiagramError> {
        values_to_diagram(sig, std::slice::from_ref(self))
    }

    fn build(&self, b: &mut DiagramBuilder<'_>) -> Result<Src, DiagramError> {
        let args = self.args.iter().map(|a| a.build(b)).collect::<Result<Vec<_>, _>>()?;
        b.add1(self.cell, self.lit, &args)
    }

    /// Total order: size, then constructor declaration index (literal index
    /// for literal families), then children left to right.
    pub fn order(&self, other: &Value) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.structural(other))
    }

    fn structural(&self, other: &Value) -> Ordering {
        self.cell
            .cmp(&other.cell)
            .then_with(|| self.lit.cmp(&other.lit))
            .then_with(|| {
                for (a, b) in self.args.iter().zip(&other.args) {
                    let o = a.order(b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                self.args.len().cmp(&other.args.len())
            })
    }
}

/// Compares two values of the same sort.
pub fn value_order(sig: &Signature, t: &Value, u: &Value) -> Result<Ordering, ValueError> {
    if t.sort(sig) != u.sort(sig) {
        return Err(ValueError::TypeMismatch);
    }
    Ok(t.order(u))
}

/// Lexicographic lift of [`value_order`] to tuples.
pub fn tuple_order(sig: &Signature, t: &[Value], u: &[Value]) -> Result<Ordering, ValueError> {
    if t.len() != u.len() {
        return Err(ValueError::TypeMismatch);
    }
    for (a, b) in t.iter().zip(u) {
        let o = value_order(sig, a, b)?;
        if o != Ordering::Equal {
            return Ok(o);
        }
    }
    Ok(Ordering::Equal)
}

/// `t₁ ⋆₀ … ⋆₀ tₙ` as one diagram with no inputs.
pub fn values_to_diagram(sig: &Signature, values: &[Value]) -> Result<Diagram, DiagramError> {
    let mut b = DiagramBuilder::new(sig, &[]);
    let outs = values.iter().map(|v| v.build(&mut b)).collect::<Result<Vec<_>, _>>()?;
    Ok(b.finish(&outs))
}

/// Reads the outputs of a closed diagram as values. Fails if any output is
/// not fed by a constructor tree, or if cells are left over.
pub fn diagram_to_values(sig: &Signature, d: &Diagram) -> Result<Vec<Value>, ValueError> {
    fn read(sig: &Signature, d: &Diagram, src: Src, out: usize, count: &mut usize) -> Result<Value, ValueError> {
        let Src::Node(n, _) = src else { return Err(ValueError::NotAValue(out)) };
        let node = d.node(n).ok_or(ValueError::NotAValue(out))?;
        if !sig.cell(node.cell).is_constructor() {
            return Err(ValueError::NotAValue(out));
        }
        *count += 1;
        let args = node
            .inputs
            .iter()
            .map(|s| read(sig, d, *s, out, count))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Value { cell: node.cell, lit: node.lit, args })
    }
    let mut count = 0;
    let values = d
        .out_wires()
        .iter()
        .enumerate()
        .map(|(j, s)| read(sig, d, *s, j, &mut count))
        .collect::<Result<Vec<_>, _>>()?;
    if count != d.cell_count() {
        // leftover cells (stuck structure or functions in an erased part)
        return Err(ValueError::NotAValue(d.out_wires().len()));
    }
    Ok(values)
}
