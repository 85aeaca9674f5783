//! Breadth-first exploration of the whole reduction graph.

use std::collections::BTreeMap;

use rustc_hash::FxHashSet as HashSet;

use crate::diagram::{CanonicalForm, Diagram};
use crate::engine::matching::{apply, find_redexes};
use crate::engine::EngineError;
use crate::par::{self, Execution};
use crate::program::Program;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 1_000_000, max_depth: 10_000 }
    }
}

/// All normal forms reachable from `d`, memoised on canonical form and
/// returned in canonical order. Each frontier layer is expanded in parallel
/// and merged in a fixed order.
pub fn enumerate_normal_forms(
    prog: &Program,
    d: &Diagram,
    budget: Budget,
    exec: Execution,
) -> Result<Vec<Diagram>, EngineError> {
    let mut start = d.clone();
    start.collect_garbage();
    let mut seen: HashSet<CanonicalForm> = HashSet::default();
    seen.insert(start.canonical_form());
    let mut normal: BTreeMap<CanonicalForm, Diagram> = BTreeMap::new();
    let mut frontier = vec![start];
    let mut depth = 0;
    let mut exhausted = false;

    while !frontier.is_empty() {
        if depth >= budget.max_depth {
            exhausted = true;
            break;
        }
        let expanded: Vec<Result<Vec<Diagram>, EngineError>> = par::map(exec, &frontier, |state| {
            find_redexes(prog, state).iter().map(|m| apply(prog, state, m)).collect()
        });
        let mut next = Vec::new();
        for (state, succ) in frontier.iter().zip(expanded) {
            let succ = succ?;
            if succ.is_empty() {
                normal.insert(state.canonical_form(), state.clone());
                continue;
            }
            for s in succ {
                if seen.len() >= budget.max_states {
                    exhausted = true;
                    break;
                }
                if seen.insert(s.canonical_form()) {
                    next.push(s);
                }
            }
        }
        if exhausted {
            break;
        }
        frontier = next;
        depth += 1;
    }
    let forms: Vec<Diagram> = normal.into_values().collect();
    if exhausted {
        Err(EngineError::BudgetExhausted { partial: forms })
    } else {
        Ok(forms)
    }
}
