//! Program files from abstract syntax.

use std::fmt::Write;

use crate::syntax::ast::*;

fn pattern(p: &PatAst) -> String {
    match p {
        PatAst::Name(n) => n.clone(),
        PatAst::Num(k) => k.to_string(),
        PatAst::Bind(b) => format!("#{b}"),
        PatAst::Ctor(n, args) => format!("{n}({})", args.iter().map(pattern).collect::<Vec<_>>().join(", ")),
    }
}

fn lit_atom(a: &LitAtom) -> String {
    match a {
        LitAtom::Bind(b) => format!("#{b}"),
        LitAtom::Num(k) => k.to_string(),
    }
}

pub fn expr(e: &Expr) -> String {
    match e {
        Expr::Name(n) => n.clone(),
        Expr::Num(k) => k.to_string(),
        Expr::Bind(b) => format!("#{b}"),
        Expr::App(n, args) => format!("{n}({})", args.iter().map(expr).collect::<Vec<_>>().join(", ")),
        Expr::Tuple(items) => format!("({})", items.iter().map(expr).collect::<Vec<_>>().join(", ")),
        Expr::Let { vars, value, body } => {
            let lhs = if vars.len() == 1 { vars[0].clone() } else { format!("({})", vars.join(", ")) };
            format!("let {lhs} = {} in {}", expr(value), expr(body))
        }
        Expr::Erase { vars, body } => format!("erase {} in {}", vars.join(", "), expr(body)),
    }
}

pub fn rule(r: &RuleAst) -> String {
    let mut s = format!(
        "rule {}: {}({})",
        r.name,
        r.head,
        r.args.iter().map(pattern).collect::<Vec<_>>().join(", ")
    );
    if !r.guards.is_empty() {
        let gs: Vec<String> =
            r.guards.iter().map(|g| format!("{} {} {}", lit_atom(&g.lhs), g.op.symbol(), lit_atom(&g.rhs))).collect();
        write!(s, " when {}", gs.join(" and ")).expect("write to string");
    }
    write!(s, " => {};", expr(&r.rhs)).expect("write to string");
    s
}

fn interp_entry(e: &InterpEntry) -> String {
    let kw = match e.kind {
        InterpKind::Current => "current",
        InterpKind::Heat => "heat",
    };
    let exprs: Vec<String> = e.exprs.iter().map(|x| x.display_with(&e.params).to_string()).collect();
    let body = if e.kind == InterpKind::Current && exprs.len() != 1 {
        format!("({})", exprs.join(", "))
    } else {
        exprs.join("")
    };
    format!("{kw} {}({}) = {body};", e.cell, e.params.join(", "))
}

pub fn decl(d: &Decl) -> String {
    match d {
        Decl::Sort(n) => format!("sort {n};"),
        Decl::Constructor { name, inputs, output, literal, a } => {
            let mut attrs = Vec::new();
            if *literal {
                attrs.push("literal".to_string());
            }
            if let Some(a) = a {
                attrs.push(format!("a = {a}"));
            }
            let ins = if inputs.is_empty() { String::new() } else { format!("{} ", inputs.join(", ")) };
            let attrs = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
            format!("constructor {name} : {ins}-> {output}{attrs};")
        }
        Decl::Function { name, inputs, outputs } => {
            let ins = if inputs.is_empty() { String::new() } else { format!("{} ", inputs.join(", ")) };
            format!("function {name} : {ins}-> {};", outputs.join(", "))
        }
        Decl::Numeral { sort, zero, succ } => format!("numeral {sort} = {zero} {succ};"),
        Decl::List { sort, nil, cons } => format!("list {sort} = {nil} {cons};"),
        Decl::Word { sort, nil, letters } => {
            let ls: Vec<String> = letters.iter().map(|(c, ch)| format!("{c} = \"{ch}\"")).collect();
            format!("word {sort} = {nil} {{ {} }};", ls.join(", "))
        }
        Decl::Rule(r) => rule(r),
        Decl::Interpretation(es) => {
            let mut s = String::from("interpretation {\n");
            for e in es {
                writeln!(s, "  {}", interp_entry(e)).expect("write to string");
            }
            s.push('}');
            s
        }
    }
}

pub fn program(p: &ProgramAst) -> String {
    let mut s = format!("polygraph {};\n", p.name);
    let mut prev: Option<std::mem::Discriminant<Decl>> = None;
    for item in &p.items {
        let kind = std::mem::discriminant(&item.decl);
        if prev != Some(kind) || matches!(item.decl, Decl::Interpretation(_)) {
            s.push('\n');
        }
        prev = Some(kind);
        s.push_str(&decl(&item.decl));
        s.push('\n');
    }
    s
}
