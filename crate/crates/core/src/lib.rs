//! Polygraphic programs: first-order functional programs compiled into
//! monoidal 3-polygraphs, evaluated by diagram rewriting and analysed with
//! polynomial interpretations.

pub mod cli;
pub mod diagram;
pub mod engine;
pub mod interp;
pub mod par;
pub mod program;
pub mod signature;
pub mod structure;
pub mod suite;
pub mod syntax;
pub mod value;
