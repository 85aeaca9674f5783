//! Sorts and 2-cells of a polygraphic program.
//!
//! Structure cells (swap, duplicate, erase) are generated automatically as
//! sorts are declared, so every signature is closed under them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SortId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId(pub u32);

/// A product of sorts. The empty path is the unit.
pub type OnePath = Vec<SortId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Constructor,
    Function,
    /// `Tau(a, b) : a b => b a`
    Tau(SortId, SortId),
    /// `Delta(a) : a => a a`
    Delta(SortId),
    /// `Eps(a) : a => ()`
    Eps(SortId),
}

impl CellKind {
    pub fn is_structure(self) -> bool {
        matches!(self, CellKind::Tau(..) | CellKind::Delta(_) | CellKind::Eps(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCell {
    pub name: String,
    pub source: OnePath,
    pub target: OnePath,
    pub kind: CellKind,
    /// Nullary constructor standing for a family indexed by a natural number.
    pub literal_family: bool,
}

impl TwoCell {
    pub fn is_constructor(&self) -> bool {
        self.kind == CellKind::Constructor
    }

    pub fn is_function(&self) -> bool {
        self.kind == CellKind::Function
    }

    pub fn is_structure(&self) -> bool {
        self.kind.is_structure()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),
    #[error("duplicate cell `{0}`")]
    DuplicateCell(String),
    #[error("constructor `{0}` must have exactly one output")]
    ConstructorTarget(String),
    #[error("literal family `{0}` must be a nullary constructor")]
    LiteralFamily(String),
    #[error("unknown sort id {0}")]
    UnknownSort(u32),
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    sorts: Vec<String>,
    cells: Vec<TwoCell>,
    sort_names: HashMap<String, SortId>,
    cell_names: HashMap<String, CellId>,
    tau: HashMap<(SortId, SortId), CellId>,
    delta: HashMap<SortId, CellId>,
    eps: HashMap<SortId, CellId>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a sort along with its structure cells and the swaps against
    /// every sort declared so far.
    pub fn add_sort(&mut self, name: &str) -> Result<SortId, SignatureError> {
        if self.sort_names.contains_key(name) {
            return Err(SignatureError::DuplicateSort(name.to_string()));
        }
        let id = SortId(self.sorts.len() as u32);
        self.sorts.push(name.to_string());
        self.sort_names.insert(name.to_string(), id);

        let d = self.push_cell(TwoCell {
            name: format!("dup[{name}]"),
            source: vec![id],
            target: vec![id, id],
            kind: CellKind::Delta(id),
            literal_family: false,
        })?;
        self.delta.insert(id, d);
        let e = self.push_cell(TwoCell {
            name: format!("erase[{name}]"),
            source: vec![id],
            target: vec![],
            kind: CellKind::Eps(id),
            literal_family: false,
        })?;
        self.eps.insert(id, e);
        for other in 0..=id.0 {
            let other = SortId(other);
            let pairs = if other == id { vec![(id, id)] } else { vec![(other, id), (id, other)] };
            for (a, b) in pairs {
                let cell = self.push_cell(TwoCell {
                    name: format!("swap[{},{}]", self.sorts[a.0 as usize], self.sorts[b.0 as usize]),
                    source: vec![a, b],
                    target: vec![b, a],
                    kind: CellKind::Tau(a, b),
                    literal_family: false,
                })?;
                self.tau.insert((a, b), cell);
            }
        }
        Ok(id)
    }

    pub fn add_constructor(
        &mut self,
        name: &str,
        source: OnePath,
        target: SortId,
        literal_family: bool,
    ) -> Result<CellId, SignatureError> {
        if literal_family && !source.is_empty() {
            return Err(SignatureError::LiteralFamily(name.to_string()));
        }
        self.check_sorts(&source)?;
        self.check_sorts(&[target])?;
        self.push_cell(TwoCell {
            name: name.to_string(),
            source,
            target: vec![target],
            kind: CellKind::Constructor,
            literal_family,
        })
    }

    pub fn add_function(
        &mut self,
        name: &str,
        source: OnePath,
        target: OnePath,
    ) -> Result<CellId, SignatureError> {
        self.check_sorts(&source)?;
        self.check_sorts(&target)?;
        self.push_cell(TwoCell {
            name: name.to_string(),
            source,
            target,
            kind: CellKind::Function,
            literal_family: false,
        })
    }

    fn check_sorts(&self, sorts: &[SortId]) -> Result<(), SignatureError> {
        match sorts.iter().find(|s| s.0 as usize >= self.sorts.len()) {
            Some(s) => Err(SignatureError::UnknownSort(s.0)),
            None => Ok(()),
        }
    }

    fn push_cell(&mut self, cell: TwoCell) -> Result<CellId, SignatureError> {
        if self.cell_names.contains_key(&cell.name) {
            return Err(SignatureError::DuplicateCell(cell.name));
        }
        if cell.kind == CellKind::Constructor && cell.target.len() != 1 {
            return Err(SignatureError::ConstructorTarget(cell.name));
        }
        let id = CellId(self.cells.len() as u32);
        self.cell_names.insert(cell.name.clone(), id);
        self.cells.push(cell);
        Ok(id)
    }

    pub fn cell(&self, id: CellId) -> &TwoCell {
        &self.cells[id.0 as usize]
    }

    pub fn get_cell(&self, id: CellId) -> Option<&TwoCell> {
        self.cells.get(id.0 as usize)
    }

    pub fn cell_id(&self, name: &str) -> Option<CellId> {
        self.cell_names.get(name).copied()
    }

    pub fn sort_id(&self, name: &str) -> Option<SortId> {
        self.sort_names.get(name).copied()
    }

    pub fn sort_name(&self, id: SortId) -> &str {
        &self.sorts[id.0 as usize]
    }

    pub fn sorts(&self) -> impl Iterator<Item = SortId> + '_ {
        (0..self.sorts.len() as u32).map(SortId)
    }

    pub fn sort_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellId, &TwoCell)> + '_ {
        self.cells.iter().enumerate().map(|(i, c)| (CellId(i as u32), c))
    }

    pub fn constructors(&self) -> impl Iterator<Item = (CellId, &TwoCell)> + '_ {
        self.cells().filter(|(_, c)| c.is_constructor())
    }

    pub fn functions(&self) -> impl Iterator<Item = (CellId, &TwoCell)> + '_ {
        self.cells().filter(|(_, c)| c.is_function())
    }

    pub fn tau(&self, a: SortId, b: SortId) -> CellId {
        self.tau[&(a, b)]
    }

    pub fn delta(&self, s: SortId) -> CellId {
        self.delta[&s]
    }

    pub fn eps(&self, s: SortId) -> CellId {
        self.eps[&s]
    }

    pub fn path_names(&self, path: &[SortId]) -> String {
        if path.is_empty() {
            return "()".to_string();
        }
        path.iter().map(|s| self.sort_name(*s)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for SortId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sort#{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_cells_follow_sorts() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("nat").unwrap();
        let list = sig.add_sort("list").unwrap();
        for (a, b) in [(nat, nat), (nat, list), (list, nat), (list, list)] {
            let t = sig.cell(sig.tau(a, b));
            assert_eq!(t.source, vec![a, b]);
            assert_eq!(t.target, vec![b, a]);
        }
        assert_eq!(sig.cell(sig.delta(list)).target, vec![list, list]);
        assert!(sig.cell(sig.eps(nat)).target.is_empty());
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("nat").unwrap();
        assert_eq!(sig.add_sort("nat"), Err(SignatureError::DuplicateSort("nat".into())));
        sig.add_constructor("z", vec![], nat, false).unwrap();
        assert!(matches!(
            sig.add_function("z", vec![], vec![nat]),
            Err(SignatureError::DuplicateCell(_))
        ));
        assert!(matches!(
            sig.add_constructor("n", vec![nat], nat, true),
            Err(SignatureError::LiteralFamily(_))
        ));
    }
}
