//! Strategy-driven normalisation with instrumented traces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, NodeId, Src};
use crate::engine::matching::{apply, find_redexes_in, Match};
use crate::engine::rule::RuleKind;
use crate::engine::EngineError;
use crate::program::Program;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[default]
    LeftmostInnermost,
    LeftmostOutermost,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub kind: RuleKind,
    /// Canonical position of the anchor in the diagram before the step.
    pub anchor: usize,
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub initial: Diagram,
    pub steps: Vec<Step>,
    pub final_diagram: Diagram,
    /// Computation steps.
    pub k: usize,
    /// Structure steps.
    pub l: usize,
    /// Largest total output current seen, when an interpretation observed the run.
    pub peak_current_sum: Option<u64>,
}

impl Trace {
    /// `k + l`, the number of 3-cells in the reduction.
    pub fn length(&self) -> usize {
        self.steps.len()
    }
}

/// Sees every intermediate 2-path of a run: once for the initial diagram
/// with `step = None`, then after each step.
pub trait Observer {
    fn observe(&mut self, step: Option<&Step>, diagram: &Diagram);
}

impl Observer for () {
    fn observe(&mut self, _: Option<&Step>, _: &Diagram) {}
}

impl<F: FnMut(Option<&Step>, &Diagram)> Observer for F {
    fn observe(&mut self, step: Option<&Step>, diagram: &Diagram) {
        self(step, diagram)
    }
}

/// Whether some strict ancestor of `n` is in `marked`, memoised.
fn has_marked_ancestor(d: &Diagram, n: NodeId, marked: &HashSet<NodeId>, memo: &mut HashMap<NodeId, bool>) -> bool {
    if let Some(h) = memo.get(&n) {
        return *h;
    }
    let mut hit = false;
    for s in &d.node(n).expect("node exists").inputs {
        if let Src::Node(m, _) = s {
            if marked.contains(m) || has_marked_ancestor(d, *m, marked, memo) {
                hit = true;
                break;
            }
        }
    }
    memo.insert(n, hit);
    hit
}

/// For each node, whether some strict descendant is in `marked`.
fn has_marked_descendant(d: &Diagram, marked: &HashSet<NodeId>) -> HashMap<NodeId, bool> {
    let order = d.topo_order().expect("diagrams are acyclic");
    let mut hit: HashMap<NodeId, bool> = HashMap::default();
    for n in order.iter().rev() {
        let flag = hit.get(n).copied().unwrap_or(false) || marked.contains(n);
        for s in &d.node(*n).expect("node exists").inputs {
            if let Src::Node(m, _) = s {
                let e = hit.entry(*m).or_insert(false);
                *e |= flag;
            }
        }
    }
    hit
}

/// Picks the redex to contract. `redexes` is in canonical order.
pub fn choose(d: &Diagram, redexes: &[Match], strategy: Strategy, rng: &mut ChaCha8Rng) -> usize {
    let anchors: HashSet<NodeId> = redexes.iter().map(|m| m.anchor).collect();
    match strategy {
        Strategy::LeftmostInnermost | Strategy::LeftmostOutermost if redexes.len() == 1 => 0,
        Strategy::LeftmostInnermost => {
            let mut memo = HashMap::default();
            redexes.iter().position(|m| !has_marked_ancestor(d, m.anchor, &anchors, &mut memo)).unwrap_or(0)
        }
        Strategy::LeftmostOutermost => {
            let hit = has_marked_descendant(d, &anchors);
            redexes.iter().position(|m| !hit.get(&m.anchor).copied().unwrap_or(false)).unwrap_or(0)
        }
        Strategy::Random(_) => rng.gen_range(0..redexes.len()),
    }
}

/// Rewrites until no redex remains or `fuel` steps have been taken.
pub fn normalize(
    prog: &Program,
    d: &Diagram,
    strategy: Strategy,
    fuel: usize,
) -> Result<(Diagram, Trace), EngineError> {
    normalize_observed(prog, d, strategy, fuel, &mut ())
}

pub fn normalize_observed(
    prog: &Program,
    d: &Diagram,
    strategy: Strategy,
    fuel: usize,
    observer: &mut dyn Observer,
) -> Result<(Diagram, Trace), EngineError> {
    let seed = match strategy {
        Strategy::Random(s) => s,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    current.collect_garbage();
    let mut trace = Trace {
        initial: d.clone(),
        steps: Vec::new(),
        final_diagram: current.clone(),
        k: 0,
        l: 0,
        peak_current_sum: None,
    };
    observer.observe(None, &current);
    loop {
        let labels = current.canonical_labels();
        let redexes = find_redexes_in(prog, &current, &labels);
        if redexes.is_empty() {
            trace.final_diagram = current.clone();
            return Ok((current, trace));
        }
        if trace.steps.len() >= fuel {
            trace.final_diagram = current;
            return Err(EngineError::FuelExhausted(Box::new(trace)));
        }
        let pick = choose(&current, &redexes, strategy, &mut rng);
        let m = &redexes[pick];
        let anchor = labels.iter().position(|n| *n == m.anchor).unwrap_or(usize::MAX);
        let rule = prog.rule(m.rule);
        let step = Step { rule: rule.name.clone(), kind: rule.kind, anchor };
        current = apply(prog, &current, m)?;
        match rule.kind {
            RuleKind::Computation => trace.k += 1,
            RuleKind::Structure => trace.l += 1,
        }
        observer.observe(Some(&step), &current);
        trace.steps.push(step);
    }
}
