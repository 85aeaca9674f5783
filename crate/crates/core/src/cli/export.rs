//! Diagram and trace renderings.

use std::fmt::Write;

use serde::Serialize;

use crate::diagram::{Diagram, Src};
use crate::engine::{RuleKind, Trace};
use crate::interp::StepRecord;
use crate::signature::Signature;

pub const DIAGRAM_SCHEMA: &str = "polygraph.diagram/1";
pub const TRACE_SCHEMA: &str = "polygraph.trace/1";

#[derive(Clone, Debug, Serialize)]
pub struct WireJson {
    /// `"in:i"` or `"n<label>:<port>"`.
    pub from: String,
    pub to: String,
    pub sort: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub id: usize,
    pub cell: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal: Option<u64>,
    /// Longest path from the inputs; nodes on one layer are independent.
    pub layer: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramJson {
    pub schema: &'static str,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub nodes: Vec<NodeJson>,
    pub wires: Vec<WireJson>,
    pub canonical_form: String,
}

/// Nodes are numbered by canonical position.
pub fn diagram_json(sig: &Signature, d: &Diagram) -> DiagramJson {
    let labels = d.canonical_labels();
    let index = |n| labels.iter().position(|m| *m == n).expect("labelled node");
    let mut layer = std::collections::HashMap::new();
    for n in d.topo_order().expect("acyclic") {
        let node = d.node(n).expect("node exists");
        let l = node
            .inputs
            .iter()
            .filter_map(|s| match s {
                Src::Node(m, _) => Some(layer[m] + 1),
                Src::Input(_) => None,
            })
            .max()
            .unwrap_or(0);
        layer.insert(n, l);
    }
    let name = |s: &Src| match s {
        Src::Input(i) => format!("in:{i}"),
        Src::Node(n, p) => format!("n{}:{p}", index(*n)),
    };
    let sort = |s: &Src| sig.sort_name(d.sort_of(sig, *s).expect("typed wire")).to_string();
    let mut nodes = Vec::new();
    let mut wires = Vec::new();
    for (i, n) in labels.iter().enumerate() {
        let node = d.node(*n).expect("node exists");
        nodes.push(NodeJson { id: i, cell: sig.cell(node.cell).name.clone(), literal: node.lit, layer: layer[n] });
        for (p, s) in node.inputs.iter().enumerate() {
            wires.push(WireJson { from: name(s), to: format!("n{i}:{p}"), sort: sort(s) });
        }
    }
    for (o, s) in d.out_wires().iter().enumerate() {
        wires.push(WireJson { from: name(s), to: format!("out:{o}"), sort: sort(s) });
    }
    DiagramJson {
        schema: DIAGRAM_SCHEMA,
        inputs: d.inputs().iter().map(|s| sig.sort_name(*s).to_string()).collect(),
        outputs: d.outputs().iter().map(|s| sig.sort_name(*s).to_string()).collect(),
        nodes,
        wires,
        canonical_form: d.canonical_form().as_str().to_string(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering, top to bottom, one rank per layer.
pub fn diagram_dot(sig: &Signature, d: &Diagram) -> String {
    let j = diagram_json(sig, d);
    let mut s = String::from("digraph diagram {\n  rankdir=TB;\n  node [shape=box];\n");
    for (i, x) in j.inputs.iter().enumerate() {
        writeln!(s, "  \"in:{i}\" [shape=point, xlabel=\"{}\"];", dot_escape(x)).expect("write to string");
    }
    for (i, x) in j.outputs.iter().enumerate() {
        writeln!(s, "  \"out:{i}\" [shape=point, xlabel=\"{}\"];", dot_escape(x)).expect("write to string");
    }
    for n in &j.nodes {
        let label = match n.literal {
            Some(k) => format!("{} {k}", n.cell),
            None => n.cell.clone(),
        };
        writeln!(s, "  \"n{}\" [label=\"{}\"];", n.id, dot_escape(&label)).expect("write to string");
    }
    let layers = j.nodes.iter().map(|n| n.layer).max().map_or(0, |m| m + 1);
    for l in 0..layers {
        let ids: Vec<String> = j.nodes.iter().filter(|n| n.layer == l).map(|n| format!("\"n{}\"", n.id)).collect();
        writeln!(s, "  {{ rank=same; {} }}", ids.join("; ")).expect("write to string");
    }
    for w in &j.wires {
        let node = |e: &str| e.split_once(':').filter(|(a, _)| a.starts_with('n')).map_or(e.to_string(), |(a, _)| a.to_string());
        writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", node(&w.from), node(&w.to), dot_escape(&w.sort))
            .expect("write to string");
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStepJson {
    pub index: usize,
    pub rule: String,
    pub kind: RuleKind,
    /// Computation and structure steps so far, this one included.
    pub k: usize,
    pub l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heat: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_heat: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub current_sum: Option<u64>,
    pub cells: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceJson {
    pub schema: &'static str,
    pub function: String,
    pub args: Vec<String>,
    pub k: usize,
    pub l: usize,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_heat: Option<u64>,
    pub steps: Vec<TraceStepJson>,
    pub result: Vec<String>,
}

/// `records` holds the initial state followed by one record per step, as a
/// heat observer produces them; pass an empty slice when none was taken.
pub fn trace_json(function: &str, args: Vec<String>, trace: &Trace, records: &[StepRecord], result: Vec<String>) -> TraceJson {
    let (mut k, mut l) = (0, 0);
    let steps = trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, st)| {
            match st.kind {
                RuleKind::Computation => k += 1,
                RuleKind::Structure => l += 1,
            }
            let r = records.get(i + 1);
            TraceStepJson {
                index: i + 1,
                rule: st.rule.clone(),
                kind: st.kind,
                k,
                l,
                heat: r.map(|r| r.heat),
                structure_heat: r.map(|r| r.structure_heat),
                current_sum: r.map(|r| r.current_sum),
                cells: r.map(|r| r.cells),
            }
        })
        .collect();
    TraceJson {
        schema: TRACE_SCHEMA,
        function: function.to_string(),
        args,
        k: trace.k,
        l: trace.l,
        length: trace.length(),
        initial_heat: records.first().map(|r| r.heat),
        steps,
        result,
    }
}
