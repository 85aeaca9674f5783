//! Redex search and single-step rewriting.

use rustc_hash::FxHashMap as HashMap;

use crate::diagram::{Diagram, NodeId, Src, Tgt};
use crate::engine::rule::{LitPat, Pattern};
use crate::engine::EngineError;
use crate::program::Program;

/// An occurrence of a rule's left-hand side in a host diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    /// Index into [`Program::rules`].
    pub rule: usize,
    /// The head cell instance.
    pub anchor: NodeId,
    /// All matched nodes, anchor first.
    pub matched: Vec<NodeId>,
    /// Host wire bound to each pattern variable.
    pub vars: Vec<Src>,
    /// Literal index bound to each binder.
    pub binds: Vec<u64>,
}

struct Partial {
    matched: Vec<NodeId>,
    vars: Vec<Option<Src>>,
    binds: Vec<Option<u64>>,
}

fn match_pattern(d: &Diagram, p: &Pattern, src: Src, acc: &mut Partial) -> bool {
    match p {
        Pattern::Var(v) => {
            acc.vars[*v] = Some(src);
            true
        }
        Pattern::Ctor { cell, lit, args } => {
            let Src::Node(n, 0) = src else { return false };
            let Some(node) = d.node(n) else { return false };
            if node.cell != *cell {
                return false;
            }
            match lit {
                None => {}
                Some(LitPat::Exact(k)) => {
                    if node.lit != Some(*k) {
                        return false;
                    }
                }
                Some(LitPat::Bind(b)) => acc.binds[*b] = node.lit,
            }
            acc.matched.push(n);
            args.iter().zip(&node.inputs).all(|(a, s)| match_pattern(d, a, *s, acc))
        }
    }
}

/// Tries one rule at one anchor node.
pub fn match_at(prog: &Program, d: &Diagram, anchor: NodeId, rule: usize) -> Option<Match> {
    let r = prog.rule(rule);
    let node = d.node(anchor)?;
    if node.cell != r.head {
        return None;
    }
    // Top-level constructors decide most failures without allocating.
    for (p, s) in r.args.iter().zip(&node.inputs) {
        if let Pattern::Ctor { cell, .. } = p {
            match s {
                Src::Node(n, 0) if d.node(*n).is_some_and(|m| m.cell == *cell) => {}
                _ => return None,
            }
        }
    }
    let mut acc = Partial {
        matched: vec![anchor],
        vars: vec![None; r.var_count()],
        binds: vec![None; r.binder_count],
    };
    for (p, s) in r.args.iter().zip(&node.inputs) {
        if !match_pattern(d, p, *s, &mut acc) {
            return None;
        }
    }
    let vars = acc.vars.into_iter().collect::<Option<Vec<_>>>()?;
    let binds = acc.binds.into_iter().collect::<Option<Vec<_>>>()?;
    if !r.guards.iter().all(|g| g.holds(&binds)) {
        return None;
    }
    Some(Match { rule, anchor, matched: acc.matched, vars, binds })
}

/// Every redex of `d`, ordered by the canonical position of the anchor and
/// then by rule declaration order.
pub fn find_redexes(prog: &Program, d: &Diagram) -> Vec<Match> {
    find_redexes_in(prog, d, &d.canonical_labels())
}

/// [`find_redexes`] with the canonical labelling already computed.
pub fn find_redexes_in(prog: &Program, d: &Diagram, labels: &[NodeId]) -> Vec<Match> {
    let mut out = Vec::new();
    for &n in labels {
        let node = d.node(n).expect("labelled node exists");
        for &ri in prog.rules_for(node.cell) {
            if let Some(m) = match_at(prog, d, n, ri) {
                out.push(m);
            }
        }
    }
    out
}

/// Replaces the matched left-hand side by the instantiated right-hand side.
/// Closed components left behind by erasure are dropped.
pub fn apply(prog: &Program, d: &Diagram, m: &Match) -> Result<Diagram, EngineError> {
    match match_at(prog, d, m.anchor, m.rule) {
        Some(ref fresh) if fresh == m => {}
        _ => return Err(EngineError::StaleMatch(m.anchor)),
    }
    let rule = prog.rule(m.rule);
    let rhs = rule.rhs_instance(&m.binds);
    let arity_out = d.node(m.anchor).map(|n| n.arity_out).unwrap_or(0);
    let mut targets: Vec<Option<Tgt>> = vec![None; arity_out];
    for (id, node) in d.nodes() {
        for (q, s) in node.inputs.iter().enumerate() {
            if let Src::Node(a, p) = s {
                if *a == m.anchor {
                    targets[*p] = Some(Tgt::Node(id, q));
                }
            }
        }
    }
    for (j, s) in d.out_wires().iter().enumerate() {
        if let Src::Node(a, p) = s {
            if *a == m.anchor {
                targets[*p] = Some(Tgt::Output(j));
            }
        }
    }
    let targets: Vec<Tgt> = targets.into_iter().map(|t| t.expect("every port is consumed")).collect();

    let mut next = d.clone();
    for n in &m.matched {
        next.remove_node(*n);
    }
    let mut fresh: HashMap<NodeId, NodeId> = HashMap::default();
    for (id, _) in rhs.nodes() {
        fresh.insert(id, next.fresh_id());
    }
    let wire = |s: Src| match s {
        Src::Input(i) => m.vars[i],
        Src::Node(n, p) => Src::Node(fresh[&n], p),
    };
    for (id, node) in rhs.nodes() {
        let mut node = node.clone();
        node.inputs = node.inputs.iter().map(|s| wire(*s)).collect();
        next.insert_node(fresh[&id], node);
    }
    for (tgt, out) in targets.iter().zip(rhs.out_wires()) {
        next.set_driver(*tgt, wire(*out));
    }
    next.collect_garbage();
    Ok(next)
}
