//! Bundled programs and machines.

pub mod tm;

use crate::interp::Interpretation;
use crate::program::Program;
use crate::syntax::load;

pub use tm::{
    compile_clocked_tm, compile_clocked_tm_ast, compile_tm, compile_tm_ast, compile_tm_relation, letter_cell,
    tm_simulate, Move, TmError, TuringMachine,
};

pub const ARITH: &str = include_str!("../../fixtures/arith.poly");
pub const SORT: &str = include_str!("../../fixtures/sort.poly");
pub const COIN: &str = include_str!("../../fixtures/coin.poly");
pub const INCREMENT_TM: &str = include_str!("../../fixtures/increment.tm");
pub const HALT_TM: &str = include_str!("../../fixtures/halt.tm");

fn builtin(text: &str) -> (Program, Interpretation) {
    load(text).unwrap_or_else(|d| panic!("bundled program: {d}"))
}

/// Unary addition and multiplication.
pub fn builtin_arith() -> (Program, Interpretation) {
    builtin(ARITH)
}

/// Fusion sort over literal naturals.
pub fn builtin_sort() -> (Program, Interpretation) {
    builtin(SORT)
}

/// A nondeterministic constant with two normal forms.
pub fn builtin_coin() -> (Program, Interpretation) {
    builtin(COIN)
}

pub fn increment_tm() -> TuringMachine {
    TuringMachine::parse(INCREMENT_TM).expect("bundled machine")
}

pub fn halt_tm() -> TuringMachine {
    TuringMachine::parse(HALT_TM).expect("bundled machine")
}

/// Looks up a bundled program by name.
pub fn builtin_by_name(name: &str) -> Option<(Program, Interpretation)> {
    match name {
        "arith" => Some(builtin_arith()),
        "sort" => Some(builtin_sort()),
        "coin" => Some(builtin_coin()),
        _ => None,
    }
}
