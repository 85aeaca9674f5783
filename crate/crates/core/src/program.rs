//! A polygraphic program: signature, computation rules, the generated
//! structure rules, and the value notation used for input and output.

use std::collections::HashMap;

use crate::engine::rule::{Rule, RuleKind};
use crate::signature::{CellId, Signature, SortId};
use crate::structure::generate_structure_rules;

/// Peano numerals `z`, `s(z)`, ... written as decimals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeralNotation {
    pub sort: SortId,
    pub zero: CellId,
    pub succ: CellId,
}

/// `[a, b, c]` for `cons(a, cons(b, cons(c, nil)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListNotation {
    pub sort: SortId,
    pub nil: CellId,
    pub cons: CellId,
}

/// `"ab"` for `a(b(nil))`, one unary constructor per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordNotation {
    pub sort: SortId,
    pub nil: CellId,
    pub letters: Vec<(CellId, char)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Notation {
    pub numerals: Vec<NumeralNotation>,
    pub lists: Vec<ListNotation>,
    pub words: Vec<WordNotation>,
}

#[derive(Clone, Debug)]
pub struct Program {
    pub name: String,
    pub sig: Signature,
    rules: Vec<Rule>,
    by_head: HashMap<CellId, Vec<usize>>,
    pub notation: Notation,
}

impl Program {
    /// Builds a program; structure rules are generated for every sort.
    pub fn new(name: &str, sig: Signature, computation: Vec<Rule>, notation: Notation) -> Self {
        let sorts: Vec<SortId> = sig.sorts().collect();
        let mut rules = computation;
        rules.extend(generate_structure_rules(&sig, &sorts));
        let mut by_head: HashMap<CellId, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_head.entry(r.head).or_default().push(i);
        }
        Program { name: name.to_string(), sig, rules, by_head, notation }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    pub fn rules_for(&self, head: CellId) -> &[usize] {
        self.by_head.get(&head).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn computation_rules(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter().filter(|r| r.kind == RuleKind::Computation)
    }

    pub fn structure_rules(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter().filter(|r| r.kind == RuleKind::Structure)
    }

    /// Largest number of structure cells on a computation right-hand side.
    pub fn constant_k(&self) -> usize {
        self.computation_rules().map(|r| r.structure_cells(&self.sig)).max().unwrap_or(0)
    }

    pub fn function(&self, name: &str) -> Option<CellId> {
        self.sig.cell_id(name).filter(|c| self.sig.cell(*c).is_function())
    }
}
