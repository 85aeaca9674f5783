//! Program files: grammar, elaboration into diagrams, printing, and the
//! textual notation for values.

pub mod ast;
pub mod elab;
pub mod parser;
pub mod print;
pub mod values;

pub use elab::{elaborate, Diagnostic};
pub use parser::{parse_nat_expr, parse_program, ParseError};
pub use values::{parse_value, print_value};

use crate::interp::eval::Interpretation;
use crate::program::Program;

/// Parses and elaborates a program file.
pub fn load(text: &str) -> Result<(Program, Interpretation), Diagnostic> {
    let ast = parse_program(text)?;
    elaborate(&ast)
}
