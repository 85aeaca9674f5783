//! Abstract syntax of program files.

use crate::interp::expr::NatExpr;

/// Line and column, both 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramAst {
    pub name: String,
    pub items: Vec<Item>,
}

/// An item with the position it was parsed at. Positions are ignored by
/// equality.
#[derive(Clone, Debug)]
pub struct Item {
    pub pos: Pos,
    pub decl: Decl,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.decl == other.decl
    }
}

impl Eq for Item {}

impl Item {
    pub fn new(decl: Decl) -> Self {
        Item { pos: Pos::default(), decl }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Sort(String),
    Constructor {
        name: String,
        inputs: Vec<String>,
        output: String,
        literal: bool,
        a: Option<u64>,
    },
    Function {
        name: String,
        inputs: Vec<String>,
        outputs: Vec<String>,
    },
    Numeral {
        sort: String,
        zero: String,
        succ: String,
    },
    List {
        sort: String,
        nil: String,
        cons: String,
    },
    Word {
        sort: String,
        nil: String,
        letters: Vec<(String, char)>,
    },
    Rule(RuleAst),
    Interpretation(Vec<InterpEntry>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleAst {
    pub name: String,
    pub head: String,
    pub args: Vec<PatAst>,
    pub guards: Vec<GuardAst>,
    pub rhs: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatAst {
    /// Variable, or nullary constructor when the name is one.
    Name(String),
    Ctor(String, Vec<PatAst>),
    Num(u64),
    Bind(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuardOp {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl GuardOp {
    pub fn symbol(self) -> &'static str {
        match self {
            GuardOp::Le => "<=",
            GuardOp::Lt => "<",
            GuardOp::Eq => "=",
            GuardOp::Ge => ">=",
            GuardOp::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LitAtom {
    Bind(String),
    Num(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardAst {
    pub lhs: LitAtom,
    pub op: GuardOp,
    pub rhs: LitAtom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Variable, or nullary constructor.
    Name(String),
    Num(u64),
    Bind(String),
    App(String, Vec<Expr>),
    Tuple(Vec<Expr>),
    Let { vars: Vec<String>, value: Box<Expr>, body: Box<Expr> },
    Erase { vars: Vec<String>, body: Box<Expr> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterpKind {
    Current,
    Heat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpEntry {
    pub kind: InterpKind,
    pub cell: String,
    pub params: Vec<String>,
    /// One expression for heat; one per output for current.
    pub exprs: Vec<NatExpr>,
}
