#![allow(dead_code)]

use polygraph::diagram::Diagram;
use polygraph::program::Program;
use polygraph::signature::CellId;
use polygraph::value::Value;

pub fn cell(prog: &Program, name: &str) -> CellId {
    prog.sig.cell_id(name).unwrap_or_else(|| panic!("no cell {name}"))
}

pub fn numeral(prog: &Program, n: u64) -> Value {
    let (z, s) = (cell(prog, "z"), cell(prog, "s"));
    (0..n).fold(Value::leaf(z), |v, _| Value::apply(s, vec![v]))
}

pub fn list(prog: &Program, xs: &[u64]) -> Value {
    let (num, nil, cons) = (cell(prog, "num"), cell(prog, "nil"), cell(prog, "cons"));
    xs.iter().rev().fold(Value::leaf(nil), |acc, x| Value::apply(cons, vec![Value::literal(num, *x), acc]))
}

pub fn values(prog: &Program, vs: &[Value]) -> Diagram {
    polygraph::value::values_to_diagram(&prog.sig, vs).unwrap()
}

/// `(v₁ ⋆₀ … ⋆₀ vₙ) ⋆₁ f`
pub fn applied(prog: &Program, f: &str, args: &[Value]) -> Diagram {
    polygraph::engine::application(prog, cell(prog, f), args).unwrap()
}

pub fn rule<'a>(prog: &'a Program, name: &str) -> &'a polygraph::engine::Rule {
    prog.rules().iter().find(|r| r.name == name).unwrap_or_else(|| panic!("no rule {name}"))
}

pub fn word(prog: &Program, f: CellId, w: &str) -> Value {
    let sort = prog.sig.cell(f).source[0];
    polygraph::syntax::parse_value(prog, &format!("\"{w}\""), sort).unwrap()
}

pub fn show_word(prog: &Program, v: &Value) -> String {
    polygraph::syntax::print_value(prog, v).trim_matches('"').to_string()
}

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
