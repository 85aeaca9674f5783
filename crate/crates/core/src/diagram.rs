//! 2-paths stored as boundary-anchored acyclic port graphs.
//!
//! Each wire is recorded once, at its target end: every node input and every
//! diagram output names the [`Src`] port that drives it. Deformation-equal
//! circuits are the same graph, so the two compositions only have to glue
//! boundaries.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::{CellId, OnePath, Signature, SortId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub u32);

/// The driving end of a wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Src {
    Input(usize),
    Node(NodeId, usize),
}

/// The receiving end of a wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tgt {
    Output(usize),
    Node(NodeId, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub cell: CellId,
    pub lit: Option<u64>,
    pub inputs: Vec<Src>,
    pub arity_out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    inputs: OnePath,
    outputs: OnePath,
    nodes: BTreeMap<NodeId, Node>,
    out_wires: Vec<Src>,
    next_id: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("type mismatch at boundary position {position}: expected {expected:?}, found {found:?}")]
    TypeMismatch { position: usize, expected: Option<SortId>, found: Option<SortId> },
    #[error("cell {cell:?} expects {expected} inputs, got {found}")]
    Arity { cell: CellId, expected: usize, found: usize },
    #[error("literal index required exactly on literal-family cells ({0:?})")]
    Literal(CellId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("node {0:?} uses unknown cell {1:?}")]
    UnknownCell(NodeId, CellId),
    #[error("node {node:?}: cell arity is {expected} -> {expected_out}, node has {found} -> {found_out}")]
    Arity { node: NodeId, expected: usize, expected_out: usize, found: usize, found_out: usize },
    #[error("node {0:?}: literal index present iff the cell is a literal family")]
    Literal(NodeId),
    #[error("wire into {tgt:?} references missing port {src:?}")]
    BadPort { src: Src, tgt: Tgt },
    #[error("port {0:?} drives more than one wire")]
    PortReuse(Src),
    #[error("port {0:?} is dangling")]
    Dangling(Src),
    #[error("wire {src:?} -> {tgt:?} connects sort {from:?} to sort {to:?}")]
    SortMismatch { src: Src, tgt: Tgt, from: SortId, to: SortId },
    #[error("the port graph contains a cycle through {0:?}")]
    Cycle(NodeId),
    #[error("output boundary has {found} wires for {expected} sorts")]
    OutputCount { expected: usize, found: usize },
}

/// Canonical byte string of a diagram modulo deformation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).unwrap_or("")
    }
}

impl Diagram {
    pub fn identity(x: &[SortId]) -> Self {
        Diagram {
            inputs: x.to_vec(),
            outputs: x.to_vec(),
            nodes: BTreeMap::new(),
            out_wires: (0..x.len()).map(Src::Input).collect(),
            next_id: 0,
        }
    }

    /// A single cell with its inputs and outputs exposed in order.
    pub fn cell(sig: &Signature, cell: CellId, lit: Option<u64>) -> Result<Self, DiagramError> {
        let c = sig.cell(cell);
        let mut b = DiagramBuilder::new(sig, &c.source);
        let ins = b.inputs();
        let outs = b.add(cell, lit, &ins)?;
        Ok(b.finish(&outs))
    }

    pub fn inputs(&self) -> &[SortId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[SortId] {
        &self.outputs
    }

    pub fn out_wires(&self) -> &[Src] {
        &self.out_wires
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> + '_ {
        self.nodes.iter().map(|(k, v)| (*k, v))
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    /// Number of 2-cells.
    pub fn cell_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `f ⋆₀ g`: juxtaposition.
    pub fn compose_parallel(&self, g: &Diagram) -> Diagram {
        let mut d = self.clone();
        let offset = self.next_id;
        let shift_in = self.inputs.len();
        let map = |s: Src| match s {
            Src::Input(i) => Src::Input(i + shift_in),
            Src::Node(n, p) => Src::Node(NodeId(n.0 + offset), p),
        };
        for (id, node) in &g.nodes {
            let mut node = node.clone();
            node.inputs = node.inputs.iter().map(|s| map(*s)).collect();
            d.nodes.insert(NodeId(id.0 + offset), node);
        }
        d.inputs.extend_from_slice(&g.inputs);
        d.outputs.extend_from_slice(&g.outputs);
        d.out_wires.extend(g.out_wires.iter().map(|s| map(*s)));
        d.next_id = offset + g.next_id;
        d
    }

    /// `f ⋆₁ g`: plugs the outputs of `self` into the inputs of `g`.
    pub fn compose_sequential(&self, g: &Diagram) -> Result<Diagram, DiagramError> {
        if self.outputs != g.inputs {
            let position = self
                .outputs
                .iter()
                .zip(&g.inputs)
                .position(|(a, b)| a != b)
                .unwrap_or(self.outputs.len().min(g.inputs.len()));
            return Err(DiagramError::TypeMismatch {
                position,
                expected: g.inputs.get(position).copied(),
                found: self.outputs.get(position).copied(),
            });
        }
        let mut d = self.clone();
        let offset = self.next_id;
        let map = |s: Src| match s {
            Src::Input(i) => self.out_wires[i],
            Src::Node(n, p) => Src::Node(NodeId(n.0 + offset), p),
        };
        for (id, node) in &g.nodes {
            let mut node = node.clone();
            node.inputs = node.inputs.iter().map(|s| map(*s)).collect();
            d.nodes.insert(NodeId(id.0 + offset), node);
        }
        d.outputs = g.outputs.clone();
        d.out_wires = g.out_wires.iter().map(|s| map(*s)).collect();
        d.next_id = offset + g.next_id;
        Ok(d)
    }

    /// Sort carried by a driving port, if the port exists.
    pub fn sort_of(&self, sig: &Signature, src: Src) -> Option<SortId> {
        match src {
            Src::Input(i) => self.inputs.get(i).copied(),
            Src::Node(n, p) => {
                let node = self.nodes.get(&n)?;
                sig.get_cell(node.cell)?.target.get(p).copied()
            }
        }
    }

    pub fn driver(&self, tgt: Tgt) -> Option<Src> {
        match tgt {
            Tgt::Output(j) => self.out_wires.get(j).copied(),
            Tgt::Node(n, p) => self.nodes.get(&n)?.inputs.get(p).copied(),
        }
    }

    /// Map from each used driving port to the port it feeds.
    pub fn consumers(&self) -> HashMap<Src, Tgt> {
        let mut map = HashMap::with_capacity_and_hasher(self.nodes.len() * 2 + self.out_wires.len(), Default::default());
        for (id, node) in &self.nodes {
            for (p, s) in node.inputs.iter().enumerate() {
                map.insert(*s, Tgt::Node(*id, p));
            }
        }
        for (j, s) in self.out_wires.iter().enumerate() {
            map.insert(*s, Tgt::Output(j));
        }
        map
    }

    /// Checks every structural invariant against the signature. Never aborts
    /// early: all violations are collected.
    pub fn validate(&self, sig: &Signature) -> Result<(), Vec<Violation>> {
        let mut v = Vec::new();
        if self.out_wires.len() != self.outputs.len() {
            v.push(Violation::OutputCount { expected: self.outputs.len(), found: self.out_wires.len() });
        }
        for (id, node) in &self.nodes {
            match sig.get_cell(node.cell) {
                None => v.push(Violation::UnknownCell(*id, node.cell)),
                Some(c) => {
                    if c.source.len() != node.inputs.len() || c.target.len() != node.arity_out {
                        v.push(Violation::Arity {
                            node: *id,
                            expected: c.source.len(),
                            expected_out: c.target.len(),
                            found: node.inputs.len(),
                            found_out: node.arity_out,
                        });
                    }
                    if c.literal_family != node.lit.is_some() {
                        v.push(Violation::Literal(*id));
                    }
                }
            }
        }
        let mut used: HashSet<Src> = HashSet::default();
        let mut check_wire = |src: Src, tgt: Tgt, want: Option<SortId>, v: &mut Vec<Violation>| {
            let exists = match src {
                Src::Input(i) => i < self.inputs.len(),
                Src::Node(n, p) => self.nodes.get(&n).is_some_and(|m| p < m.arity_out),
            };
            if !exists {
                v.push(Violation::BadPort { src, tgt });
                return;
            }
            if !used.insert(src) {
                v.push(Violation::PortReuse(src));
            }
            if let (Some(from), Some(to)) = (self.sort_of(sig, src), want) {
                if from != to {
                    v.push(Violation::SortMismatch { src, tgt, from, to });
                }
            }
        };
        for (id, node) in &self.nodes {
            let want = sig.get_cell(node.cell).map(|c| c.source.clone()).unwrap_or_default();
            for (p, s) in node.inputs.iter().enumerate() {
                check_wire(*s, Tgt::Node(*id, p), want.get(p).copied(), &mut v);
            }
        }
        for (j, s) in self.out_wires.iter().enumerate() {
            check_wire(*s, Tgt::Output(j), self.outputs.get(j).copied(), &mut v);
        }
        for i in 0..self.inputs.len() {
            if !used.contains(&Src::Input(i)) {
                v.push(Violation::Dangling(Src::Input(i)));
            }
        }
        for (id, node) in &self.nodes {
            for p in 0..node.arity_out {
                if !used.contains(&Src::Node(*id, p)) {
                    v.push(Violation::Dangling(Src::Node(*id, p)));
                }
            }
        }
        if let Err(n) = self.topo_order() {
            v.push(Violation::Cycle(n));
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// Nodes in an order where every node follows its drivers. Ties are
    /// broken by node id, so the order is deterministic for a given graph.
    pub fn topo_order(&self) -> Result<Vec<NodeId>, NodeId> {
        let mut indeg: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut succ: HashMap<NodeId, Vec<NodeId>> = HashMap::default();
        for (id, node) in &self.nodes {
            let mut d = 0;
            for s in &node.inputs {
                if let Src::Node(m, _) = s {
                    if self.nodes.contains_key(m) {
                        d += 1;
                        succ.entry(*m).or_default().push(*id);
                    }
                }
            }
            indeg.insert(*id, d);
        }
        let mut ready: std::collections::BTreeSet<NodeId> =
            indeg.iter().filter(|(_, d)| **d == 0).map(|(k, _)| *k).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(n) = ready.pop_first() {
            order.push(n);
            if let Some(next) = succ.get(&n) {
                for m in next {
                    let d = indeg.get_mut(m).expect("successor is a node");
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(*m);
                    }
                }
            }
        }
        if order.len() == self.nodes.len() {
            Ok(order)
        } else {
            let stuck = indeg.iter().find(|(_, d)| **d > 0).map(|(k, _)| *k).unwrap_or(NodeId(0));
            Err(stuck)
        }
    }

    // --- mutation used by the rewriting engine ---

    pub(crate) fn fresh_id(&mut self) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        id
    }

    pub(crate) fn insert_node(&mut self, id: NodeId, node: Node) {
        self.nodes.insert(id, node);
    }

    pub(crate) fn remove_node(&mut self, id: NodeId) -> Option<Node> {
        self.nodes.remove(&id)
    }

    pub(crate) fn set_driver(&mut self, tgt: Tgt, src: Src) {
        match tgt {
            Tgt::Output(j) => self.out_wires[j] = src,
            Tgt::Node(n, p) => {
                if let Some(node) = self.nodes.get_mut(&n) {
                    node.inputs[p] = src;
                }
            }
        }
    }

    // --- canonical form ---

    /// Deterministic labelling of all nodes, invariant under isomorphisms of
    /// boundary-anchored port graphs. Nodes reachable from the boundary are
    /// numbered by a depth-first walk from input anchors then output anchors;
    /// closed components follow, ordered by their own canonical strings.
    pub fn canonical_labels(&self) -> Vec<NodeId> {
        self.canonical_parts().0
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let (order, closed) = self.canonical_parts();
        let index: HashMap<NodeId, usize> =
            order.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let boundary_len = order.len() - closed.iter().map(|c| c.0.len()).sum::<usize>();
        let mut s = String::new();
        let _ = write!(s, "in[{}]out[{}]", path_key(&self.inputs), path_key(&self.outputs));
        for n in &order[..boundary_len] {
            self.write_node(&mut s, *n, &index);
        }
        s.push_str("|outs");
        for w in &self.out_wires {
            write_src(&mut s, *w, &index);
        }
        for (_, text) in &closed {
            s.push_str("|closed");
            s.push_str(text);
        }
        CanonicalForm(s.into_bytes())
    }

    fn write_node(&self, s: &mut String, n: NodeId, index: &HashMap<NodeId, usize>) {
        let node = &self.nodes[&n];
        let _ = write!(s, ";c{}", node.cell.0);
        if let Some(l) = node.lit {
            let _ = write!(s, "#{l}");
        }
        s.push('(');
        for w in &node.inputs {
            write_src(s, *w, index);
        }
        s.push(')');
    }

    fn canonical_parts(&self) -> (Vec<NodeId>, Vec<(Vec<NodeId>, String)>) {
        let consumers = self.consumers();
        let mut order: Vec<NodeId> = Vec::with_capacity(self.nodes.len());
        let mut seen: HashSet<NodeId> = HashSet::default();
        for i in 0..self.inputs.len() {
            if let Some(Tgt::Node(n, _)) = consumers.get(&Src::Input(i)) {
                self.walk(*n, &consumers, &mut seen, &mut order);
            }
        }
        for w in &self.out_wires {
            if let Src::Node(n, _) = w {
                self.walk(*n, &consumers, &mut seen, &mut order);
            }
        }
        // Closed components: canonical string is the least over all starts.
        let mut closed: Vec<(Vec<NodeId>, String)> = Vec::new();
        let rest: Vec<NodeId> = self.nodes.keys().filter(|n| !seen.contains(n)).copied().collect();
        let mut done: HashSet<NodeId> = HashSet::default();
        for start in rest {
            if done.contains(&start) {
                continue;
            }
            let mut component = Vec::new();
            let mut tmp = HashSet::default();
            self.walk(start, &consumers, &mut tmp, &mut component);
            done.extend(component.iter().copied());
            let mut best: Option<(String, Vec<NodeId>)> = None;
            for &s in &component {
                let mut o = Vec::new();
                let mut t = HashSet::default();
                self.walk(s, &consumers, &mut t, &mut o);
                let idx: HashMap<NodeId, usize> = o.iter().enumerate().map(|(i, n)| (*n, i)).collect();
                let mut text = String::new();
                for n in &o {
                    self.write_node(&mut text, *n, &idx);
                }
                if best.as_ref().map_or(true, |(b, _)| text < *b) {
                    best = Some((text, o));
                }
            }
            if let Some((text, o)) = best {
                closed.push((o, text));
            }
        }
        closed.sort_by(|a, b| a.1.cmp(&b.1));
        for (o, _) in &closed {
            order.extend(o.iter().copied());
        }
        (order, closed)
    }

    fn walk(
        &self,
        start: NodeId,
        consumers: &HashMap<Src, Tgt>,
        seen: &mut HashSet<NodeId>,
        order: &mut Vec<NodeId>,
    ) {
        let mut stack = vec![start];
        // Explicit stack emulating the recursive pre-order walk: drivers in
        // port order first, then consumers in port order.
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            order.push(n);
            let node = &self.nodes[&n];
            for p in (0..node.arity_out).rev() {
                if let Some(Tgt::Node(m, _)) = consumers.get(&Src::Node(n, p)) {
                    if !seen.contains(m) {
                        stack.push(*m);
                    }
                }
            }
            for s in node.inputs.iter().rev() {
                if let Src::Node(m, _) = s {
                    if !seen.contains(m) {
                        stack.push(*m);
                    }
                }
            }
        }
    }

    /// Removes every component that touches neither boundary and returns how
    /// many nodes were dropped.
    pub fn collect_garbage(&mut self) -> usize {
        // Without a cell that has no outputs every node reaches an output.
        if self.nodes.values().all(|n| n.arity_out > 0) {
            return 0;
        }
        let consumers = self.consumers();
        let mut seen: HashSet<NodeId> = HashSet::default();
        let mut order = Vec::new();
        for i in 0..self.inputs.len() {
            if let Some(Tgt::Node(n, _)) = consumers.get(&Src::Input(i)) {
                self.walk(*n, &consumers, &mut seen, &mut order);
            }
        }
        for w in &self.out_wires {
            if let Src::Node(n, _) = w {
                self.walk(*n, &consumers, &mut seen, &mut order);
            }
        }
        let before = self.nodes.len();
        self.nodes.retain(|n, _| seen.contains(n));
        before - self.nodes.len()
    }
}

fn path_key(p: &[SortId]) -> String {
    p.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(",")
}

fn write_src(s: &mut String, src: Src, index: &HashMap<NodeId, usize>) {
    match src {
        Src::Input(i) => {
            let _ = write!(s, "i{i},");
        }
        Src::Node(n, p) => {
            let _ = write!(s, "n{}.{p},", index.get(&n).copied().unwrap_or(usize::MAX));
        }
    }
}

/// Incremental construction of a diagram from explicit wires.
pub struct DiagramBuilder<'s> {
    sig: &'s Signature,
    diagram: Diagram,
}

impl<'s> DiagramBuilder<'s> {
    pub fn new(sig: &'s Signature, inputs: &[SortId]) -> Self {
        let mut diagram = Diagram::identity(inputs);
        diagram.out_wires.clear();
        diagram.outputs.clear();
        DiagramBuilder { sig, diagram }
    }

    pub fn inputs(&self) -> Vec<Src> {
        (0..self.diagram.inputs.len()).map(Src::Input).collect()
    }

    pub fn sort_of(&self, src: Src) -> Option<SortId> {
        self.diagram.sort_of(self.sig, src)
    }

    pub fn add(&mut self, cell: CellId, lit: Option<u64>, args: &[Src]) -> Result<Vec<Src>, DiagramError> {
        let c = self.sig.cell(cell);
        if c.source.len() != args.len() {
            return Err(DiagramError::Arity { cell, expected: c.source.len(), found: args.len() });
        }
        if c.literal_family != lit.is_some() {
            return Err(DiagramError::Literal(cell));
        }
        for (position, (a, want)) in args.iter().zip(&c.source).enumerate() {
            let found = self.sort_of(*a);
            if found != Some(*want) {
                return Err(DiagramError::TypeMismatch { position, expected: Some(*want), found });
            }
        }
        let id = self.diagram.fresh_id();
        let arity_out = c.target.len();
        self.diagram.nodes.insert(id, Node { cell, lit, inputs: args.to_vec(), arity_out });
        Ok((0..arity_out).map(|p| Src::Node(id, p)).collect())
    }

    /// Convenience for single-output cells.
    pub fn add1(&mut self, cell: CellId, lit: Option<u64>, args: &[Src]) -> Result<Src, DiagramError> {
        let outs = self.add(cell, lit, args)?;
        debug_assert_eq!(outs.len(), 1);
        Ok(outs[0])
    }

    pub fn finish(mut self, outputs: &[Src]) -> Diagram {
        self.diagram.outputs = outputs.iter().map(|s| self.sort_of(*s).expect("output wire exists")).collect();
        self.diagram.out_wires = outputs.to_vec();
        self.diagram
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arith() -> (Signature, SortId, CellId, CellId, CellId) {
        let mut sig = Signature::new();
        let nat = sig.add_sort("nat").unwrap();
        let z = sig.add_constructor("z", vec![], nat, false).unwrap();
        let s = sig.add_constructor("s", vec![nat], nat, false).unwrap();
        let add = sig.add_function("add", vec![nat, nat], vec![nat]).unwrap();
        (sig, nat, z, s, add)
    }

    fn numeral(sig: &Signature, z: CellId, s: CellId, n: usize) -> Diagram {
        let mut b = DiagramBuilder::new(sig, &[]);
        let mut w = b.add1(z, None, &[]).unwrap();
        for _ in 0..n {
            w = b.add1(s, None, &[w]).unwrap();
        }
        b.finish(&[w])
    }

    #[test]
    fn identity_has_no_cells() {
        let (sig, nat, ..) = arith();
        assert_eq!(Diagram::identity(&[]).cell_count(), 0);
        let id = Diagram::identity(&[nat, nat]);
        assert_eq!(id.cell_count(), 0);
        assert_eq!(id.out_wires(), &[Src::Input(0), Src::Input(1)]);
        assert!(id.validate(&sig).is_ok());
    }

    #[test]
    fn numerals_and_addition_compose() {
        let (sig, _nat, z, s, add) = arith();
        let t2 = numeral(&sig, z, s, 2);
        let t3 = numeral(&sig, z, s, 3);
        assert_eq!(t2.cell_count(), 3);
        let pair = t2.compose_parallel(&t3);
        assert_eq!(pair.inputs().len(), 0);
        assert_eq!(pair.outputs().len(), 2);
        assert_eq!(pair.cell_count(), 7);
        let full = pair.compose_sequential(&Diagram::cell(&sig, add, None).unwrap()).unwrap();
        assert_eq!(full.cell_count(), 8);
        assert!(full.validate(&sig).is_ok());
    }

    #[test]
    fn sequential_type_mismatch() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("nat").unwrap();
        let list = sig.add_sort("list").unwrap();
        let cons = sig.add_constructor("cons", vec![nat, list], list, false).unwrap();
        let err = Diagram::identity(&[nat]).compose_sequential(&Diagram::cell(&sig, cons, None).unwrap());
        assert!(matches!(err, Err(DiagramError::TypeMismatch { position: 1, expected: Some(_), found: None })));
    }

    #[test]
    fn validate_reports_sort_mismatch_and_cycles() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("nat").unwrap();
        let list = sig.add_sort("list").unwrap();
        let f = sig.add_function("f", vec![nat], vec![nat]).unwrap();
        // nat wire feeding a list output
        let mut d = Diagram::identity(&[nat]);
        d.outputs = vec![list];
        let v = d.validate(&sig).unwrap_err();
        assert!(v.iter().any(|x| matches!(x, Violation::SortMismatch { .. })));

        // two f cells wired into a loop
        let mut b = DiagramBuilder::new(&sig, &[nat]);
        let x = b.inputs()[0];
        let a = b.add1(f, None, &[x]).unwrap();
        let c = b.add1(f, None, &[a]).unwrap();
        let mut d = b.finish(&[c]);
        let (Src::Node(first, _), Src::Node(second, _)) = (a, c) else { unreachable!() };
        d.set_driver(Tgt::Node(first, 0), Src::Node(second, 0));
        d.set_driver(Tgt::Output(0), Src::Input(0));
        let v = d.validate(&sig).unwrap_err();
        assert!(v.iter().any(|x| matches!(x, Violation::Cycle(_))));
    }

    #[test]
    fn canonical_form_ignores_construction_order() {
        let (sig, nat, z, s, add) = arith();
        let addc = Diagram::cell(&sig, add, None).unwrap();
        let sc = Diagram::cell(&sig, s, None).unwrap();
        let id = Diagram::identity(&[nat]);
        // (s ⋆₀ id) ⋆₁ (id ⋆₀ s) versus (id ⋆₀ s) ⋆₁ (s ⋆₀ id)
        let a = sc.compose_parallel(&id).compose_sequential(&id.compose_parallel(&sc)).unwrap();
        let b = id.compose_parallel(&sc).compose_sequential(&sc.compose_parallel(&id)).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        let a2 = a.compose_sequential(&addc).unwrap();
        let b2 = b.compose_sequential(&addc).unwrap();
        assert_eq!(a2.canonical_form(), b2.canonical_form());
        assert_ne!(numeral(&sig, z, s, 1).canonical_form(), numeral(&sig, z, s, 2).canonical_form());
    }

    #[test]
    fn canonical_form_respects_output_order() {
        let (sig, _nat, z, s, _) = arith();
        let t1 = numeral(&sig, z, s, 1);
        let t2 = numeral(&sig, z, s, 2);
        assert_ne!(
            t1.compose_parallel(&t2).canonical_form(),
            t2.compose_parallel(&t1).canonical_form()
        );
    }

    #[test]
    fn closed_components_sorted_and_collected() {
        let (sig, nat, z, s, _) = arith();
        let erase = Diagram::cell(&sig, sig.eps(nat), None).unwrap();
        let gone1 = numeral(&sig, z, s, 1).compose_sequential(&erase).unwrap();
        let gone2 = numeral(&sig, z, s, 2).compose_sequential(&erase).unwrap();
        let t = numeral(&sig, z, s, 0);
        let a = gone1.compose_parallel(&gone2).compose_parallel(&t);
        let b = gone2.compose_parallel(&t).compose_parallel(&gone1);
        assert_eq!(a.canonical_form(), b.canonical_form());
        let mut c = a.clone();
        assert_eq!(c.collect_garbage(), 7);
        assert_eq!(c.canonical_form(), t.canonical_form());
    }
}
