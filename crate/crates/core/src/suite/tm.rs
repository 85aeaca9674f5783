//! Turing machines: a text format, a direct simulator, and compilers into
//! polygraphic programs with and without a polynomial clock.
//!
//! The tape is split at the head into a left word (nearest cell outermost)
//! and a right word. The result of a halted machine is the word strictly
//! right of the head. Execution starts on a blank cell just left of the
//! input.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::interp::eval::{eval_symbolic, Interpretation};
use crate::interp::expr::NatExpr;
use crate::program::Program;
use crate::syntax::ast::*;
use crate::syntax::elab::elaborate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    pub name: String,
    /// Input letters, blank excluded.
    pub alphabet: Vec<char>,
    pub blank: char,
    pub initial: String,
    pub states: BTreeSet<String>,
    /// `(state, None)` halts on every letter.
    pub halting: BTreeSet<(String, Option<char>)>,
    /// A relation; deterministic machines have one entry per key.
    pub transitions: BTreeMap<(String, char), Vec<(String, char, Move)>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no transition for state `{state}` reading `{letter}`")]
    Partial { state: String, letter: char },
    #[error("state `{state}` reading `{letter}` has several transitions")]
    Nondeterministic { state: String, letter: char },
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("no halt within {0} steps")]
    StepLimit(usize),
    #[error("clock polynomial: {0}")]
    Clock(String),
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl TuringMachine {
    /// Reads the line-based machine format; `#` starts a comment.
    pub fn parse(text: &str) -> Result<TuringMachine, TmError> {
        let mut name = None;
        let mut alphabet = Vec::new();
        let mut blank = None;
        let mut initial = None;
        let mut halting = BTreeSet::new();
        let mut transitions: BTreeMap<(String, char), Vec<(String, char, Move)>> = BTreeMap::new();
        let mut states = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| TmError::Syntax { line, message };
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let Some((kw, rest)) = words.split_first() else { continue };
            let letter = |w: &str| -> Result<char, TmError> {
                let mut cs = w.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(err(format!("`{w}` is not a single letter"))),
                }
            };
            let state = |w: &str| -> Result<String, TmError> {
                if is_ident(w) {
                    Ok(w.to_string())
                } else {
                    Err(err(format!("`{w}` is not a valid state name")))
                }
            };
            match (*kw, rest) {
                ("machine", [n]) => name = Some(state(n)?),
                ("alphabet", ls) => {
                    for l in ls {
                        alphabet.push(letter(l)?);
                    }
                }
                ("blank", [b]) => blank = Some(letter(b)?),
                ("initial", [q]) => {
                    initial = Some(state(q)?);
                    states.insert(state(q)?);
                }
                ("halt", [q]) => {
                    states.insert(state(q)?);
                    halting.insert((state(q)?, None));
                }
                ("halt", [q, a]) => {
                    states.insert(state(q)?);
                    halting.insert((state(q)?, Some(letter(a)?)));
                }
                ("trans", [q, a, "->", q2, b, mv]) => {
                    let mv = match *mv {
                        "L" => Move::L,
                        "R" => Move::R,
                        other => return Err(err(format!("move must be L or R, found `{other}`"))),
                    };
                    states.insert(state(q)?);
                    states.insert(state(q2)?);
                    transitions.entry((state(q)?, letter(a)?)).or_default().push((state(q2)?, letter(b)?, mv));
                }
                _ => return Err(err(format!("cannot read `{}`", content.trim()))),
            }
        }
        let missing = |what: &str| TmError::Syntax { line: 0, message: format!("missing `{what}` line") };
        let tm = TuringMachine {
            name: name.ok_or_else(|| missing("machine"))?,
            alphabet,
            blank: blank.ok_or_else(|| missing("blank"))?,
            initial: initial.ok_or_else(|| missing("initial"))?,
            states,
            halting,
            transitions,
        };
        tm.validate()?;
        Ok(tm)
    }

    /// Alphabet followed by the blank.
    pub fn tape_letters(&self) -> Vec<char> {
        let mut v = self.alphabet.clone();
        v.push(self.blank);
        v
    }

    pub fn is_halting(&self, q: &str, a: char) -> bool {
        self.halting.contains(&(q.to_string(), None)) || self.halting.contains(&(q.to_string(), Some(a)))
    }

    /// Transitions are given for exactly the non-halting pairs, over known
    /// letters.
    pub fn validate(&self) -> Result<(), TmError> {
        let letters = self.tape_letters();
        for ((_, a), ts) in &self.transitions {
            for c in std::iter::once(a).chain(ts.iter().map(|t| &t.1)) {
                if !letters.contains(c) {
                    return Err(TmError::UnknownLetter(*c));
                }
            }
        }
        for (_, a) in &self.halting {
            if let Some(a) = a {
                if !letters.contains(a) {
                    return Err(TmError::UnknownLetter(*a));
                }
            }
        }
        for q in &self.states {
            for a in &letters {
                let has = self.transitions.get(&(q.clone(), *a)).is_some_and(|t| !t.is_empty());
                if !self.is_halting(q, *a) && !has {
                    return Err(TmError::Partial { state: q.clone(), letter: *a });
                }
            }
        }
        Ok(())
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions.values().all(|t| t.len() == 1)
    }

    fn check_deterministic(&self) -> Result<(), TmError> {
        match self.transitions.iter().find(|(_, t)| t.len() > 1) {
            Some(((q, a), _)) => Err(TmError::Nondeterministic { state: q.clone(), letter: *a }),
            None => Ok(()),
        }
    }
}

/// Runs the machine directly. Returns the word right of the head and the
/// number of transitions taken. Nondeterministic machines follow their
/// first listed transition.
pub fn tm_simulate(tm: &TuringMachine, input: &str, max_steps: usize) -> Result<(String, usize), TmError> {
    for c in input.chars() {
        if !tm.alphabet.contains(&c) {
            return Err(TmError::UnknownLetter(c));
        }
    }
    let mut state = tm.initial.clone();
    let mut left: Vec<char> = Vec::new();
    let mut head = tm.blank;
    let mut right: VecDeque<char> = input.chars().collect();
    let mut steps = 0;
    loop {
        if tm.is_halting(&state, head) {
            return Ok((right.into_iter().collect(), steps));
        }
        if steps >= max_steps {
            return Err(TmError::StepLimit(max_steps));
        }
        let (q2, b, mv) = tm.transitions[&(state.clone(), head)][0].clone();
        match mv {
            Move::R => {
                left.push(b);
                head = right.pop_front().unwrap_or(tm.blank);
            }
            Move::L => {
                right.push_front(b);
                head = left.pop().unwrap_or(tm.blank);
            }
        }
        state = q2;
        steps += 1;
    }
}

/// Constructor name for a tape letter.
pub fn letter_cell(tm: &TuringMachine, c: char) -> String {
    if c == tm.blank {
        "blank".to_string()
    } else if c.is_ascii_alphanumeric() {
        format!("sym_{c}")
    } else {
        format!("sym_u{:x}", c as u32)
    }
}

fn step_cell(prefix: &str, tm: &TuringMachine, q: &str, a: char) -> String {
    format!("{prefix}_{q}_{}", letter_cell(tm, a))
}

fn name(s: &str) -> Expr {
    Expr::Name(s.to_string())
}

fn app(f: &str, args: Vec<Expr>) -> Expr {
    Expr::App(f.to_string(), args)
}

fn pvar(s: &str) -> PatAst {
    PatAst::Name(s.to_string())
}

fn pctor(f: &str, args: Vec<PatAst>) -> PatAst {
    PatAst::Ctor(f.to_string(), args)
}

fn rule(name: String, head: String, args: Vec<PatAst>, rhs: Expr) -> Item {
    Item::new(Decl::Rule(RuleAst { name, head, args, guards: vec![], rhs }))
}

fn word_decls(tm: &TuringMachine, items: &mut Vec<Item>) {
    items.push(Item::new(Decl::Sort("mon".into())));
    items.push(Item::new(Decl::Constructor {
        name: "nil".into(),
        inputs: vec![],
        output: "mon".into(),
        literal: false,
        a: Some(1),
    }));
    for c in tm.tape_letters() {
        items.push(Item::new(Decl::Constructor {
            name: letter_cell(tm, c),
            inputs: vec!["mon".into()],
            output: "mon".into(),
            literal: false,
            a: Some(1),
        }));
    }
    items.push(Item::new(Decl::Word {
        sort: "mon".into(),
        nil: "nil".into(),
        letters: tm.tape_letters().into_iter().map(|c| (letter_cell(tm, c), c)).collect(),
    }));
}

/// Transition rules for one step cell. `clocked` adds the counter as the
/// first argument: `s(n)` is consumed per transition.
fn transition_rules(tm: &TuringMachine, clocked: bool, items: &mut Vec<Item>) {
    let prefix = if clocked { "cstep" } else { "step" };
    let letters = tm.tape_letters();
    let with_clock = |mut args: Vec<PatAst>| {
        if clocked {
            args.insert(0, pctor("s", vec![pvar("n")]));
        }
        args
    };
    let with_counter = |mut args: Vec<Expr>| {
        if clocked {
            args.insert(0, name("n"));
        }
        args
    };
    for q in &tm.states {
        for &a in &letters {
            let head = step_cell(prefix, tm, q, a);
            let tag = format!("{q}_{}", letter_cell(tm, a));
            if tm.is_halting(q, a) {
                let (args, erased) = if clocked {
                    (vec![pvar("n"), pvar("wl"), pvar("wr")], vec!["n".to_string(), "wl".to_string()])
                } else {
                    (vec![pvar("wl"), pvar("wr")], vec!["wl".to_string()])
                };
                let rhs = Expr::Erase { vars: erased, body: Box::new(name("wr")) };
                items.push(rule(format!("halt_{tag}"), head, args, rhs));
                continue;
            }
            for (k, (q2, b, mv)) in tm.transitions[&(q.clone(), a)].iter().enumerate() {
                let bname = letter_cell(tm, *b);
                let suffix = if k == 0 { String::new() } else { format!("_{k}") };
                for &c in &letters {
                    let cname = letter_cell(tm, c);
                    let target = step_cell(prefix, tm, q2, c);
                    let (args, rhs) = match mv {
                        Move::R => (
                            vec![pvar("wl"), pctor(&cname, vec![pvar("wr")])],
                            vec![app(&bname, vec![name("wl")]), name("wr")],
                        ),
                        Move::L => (
                            vec![pctor(&cname, vec![pvar("wl")]), pvar("wr")],
                            vec![name("wl"), app(&bname, vec![name("wr")])],
                        ),
                    };
                    items.push(rule(
                        format!("t_{tag}_{cname}{suffix}"),
                        head.clone(),
                        with_clock(args),
                        app(&target, with_counter(rhs)),
                    ));
                }
                let target = step_cell(prefix, tm, q2, tm.blank);
                let (args, rhs) = match mv {
                    Move::R => (
                        vec![pvar("wl"), pvar("nil")],
                        vec![app(&bname, vec![name("wl")]), name("nil")],
                    ),
                    Move::L => (
                        vec![pvar("nil"), pvar("wr")],
                        vec![name("nil"), app(&bname, vec![name("wr")])],
                    ),
                };
                items.push(rule(
                    format!("t_{tag}_end{suffix}"),
                    head.clone(),
                    with_clock(args),
                    app(&target, with_counter(rhs)),
                ));
            }
            if clocked {
                items.push(rule(
                    format!("timeout_{tag}"),
                    head,
                    vec![pvar("z"), pvar("wl"), pvar("wr")],
                    Expr::Erase { vars: vec!["wl".into()], body: Box::new(name("wr")) },
                ));
            }
        }
    }
}

fn step_functions(tm: &TuringMachine, clocked: bool, items: &mut Vec<Item>) {
    let prefix = if clocked { "cstep" } else { "step" };
    for q in &tm.states {
        for a in tm.tape_letters() {
            let mut inputs = vec!["mon".to_string(), "mon".to_string()];
            if clocked {
                inputs.insert(0, "nat".into());
            }
            items.push(Item::new(Decl::Function {
                name: step_cell(prefix, tm, q, a),
                inputs,
                outputs: vec!["mon".into()],
            }));
        }
    }
}

fn build(ast: &ProgramAst) -> (Program, Interpretation) {
    elaborate(ast).unwrap_or_else(|d| panic!("generated program does not elaborate: {d}"))
}

fn compile_ast(tm: &TuringMachine) -> ProgramAst {
    let mut items = Vec::new();
    word_decls(tm, &mut items);
    items.push(Item::new(Decl::Function { name: "run".into(), inputs: vec!["mon".into()], outputs: vec!["mon".into()] }));
    step_functions(tm, false, &mut items);
    items.push(rule(
        "init".into(),
        "run".into(),
        vec![pvar("w")],
        app(&step_cell("step", tm, &tm.initial, tm.blank), vec![name("nil"), name("w")]),
    ));
    transition_rules(tm, false, &mut items);
    ProgramAst { name: tm.name.clone(), items }
}

/// Syntax of the compiled program; the main function is `run`.
pub fn compile_tm_ast(tm: &TuringMachine) -> Result<ProgramAst, TmError> {
    tm.validate()?;
    tm.check_deterministic()?;
    Ok(compile_ast(tm))
}

pub fn compile_tm(tm: &TuringMachine) -> Result<Program, TmError> {
    Ok(build(&compile_tm_ast(tm)?).0)
}

/// Nondeterministic machines compile to non-confluent programs, one rule
/// per alternative; evaluate them in exhaustive mode.
pub fn compile_tm_relation(tm: &TuringMachine) -> Result<Program, TmError> {
    tm.validate()?;
    Ok(build(&compile_ast(tm)).0)
}

#[derive(Clone, Debug)]
enum ClockTerm {
    N,
    K(u64),
    Add(Box<ClockTerm>, Box<ClockTerm>),
    Mul(Box<ClockTerm>, Box<ClockTerm>),
}

/// Products with a constant factor become repeated additions.
fn expand(e: &NatExpr) -> Result<ClockTerm, TmError> {
    Ok(match e {
        NatExpr::Var(0) => ClockTerm::N,
        NatExpr::Var(_) => return Err(TmError::Clock("only one variable is allowed".into())),
        NatExpr::Const(c) => ClockTerm::K(*c),
        NatExpr::Add(a, b) => ClockTerm::Add(Box::new(expand(a)?), Box::new(expand(b)?)),
        NatExpr::Mul(a, b) => match (expand(a)?, expand(b)?) {
            (ClockTerm::K(p), ClockTerm::K(q)) => ClockTerm::K(p.saturating_mul(q)),
            (ClockTerm::K(c), t) | (t, ClockTerm::K(c)) => {
                if c == 0 {
                    ClockTerm::K(0)
                } else {
                    (1..c).fold(t.clone(), |acc, _| ClockTerm::Add(Box::new(acc), Box::new(t.clone())))
                }
            }
            (x, y) => ClockTerm::Mul(Box::new(x), Box::new(y)),
        },
        _ => return Err(TmError::Clock("only +, * and constants are supported".into())),
    })
}

fn uses(t: &ClockTerm) -> (usize, bool) {
    match t {
        ClockTerm::N => (1, false),
        ClockTerm::K(_) => (0, false),
        ClockTerm::Add(a, b) | ClockTerm::Mul(a, b) => {
            let ((x, m1), (y, m2)) = (uses(a), uses(b));
            (x + y, m1 || m2 || matches!(t, ClockTerm::Mul(..)))
        }
    }
}

fn clock_expr(t: &ClockTerm, next: &mut usize, count: usize) -> Expr {
    match t {
        ClockTerm::N => {
            *next += 1;
            if count == 1 {
                name("n")
            } else {
                name(&format!("n{next}"))
            }
        }
        ClockTerm::K(c) => Expr::Num(*c),
        ClockTerm::Add(a, b) => app("add", vec![clock_expr(a, next, count), clock_expr(b, next, count)]),
        ClockTerm::Mul(a, b) => app("mult", vec![clock_expr(a, next, count), clock_expr(b, next, count)]),
    }
}

/// `clock(n) => P(n)` with one duplication per extra use of `n`.
fn clock_rhs(t: &ClockTerm) -> Expr {
    let (count, _) = uses(t);
    let mut next = 0;
    let body = clock_expr(t, &mut next, count);
    if count == 0 {
        return Expr::Erase { vars: vec!["n".into()], body: Box::new(body) };
    }
    // n => (n1, r1), r1 => (n2, r2), ..., the last rest is n{count}.
    let mut e = body;
    for i in (1..count).rev() {
        let rest = if i + 1 == count { format!("n{count}") } else { format!("r{i}") };
        let src = if i == 1 { "n".to_string() } else { format!("r{}", i - 1) };
        e = Expr::Let {
            vars: vec![format!("n{i}"), rest],
            value: Box::new(app("dup", vec![name(&src)])),
            body: Box::new(e),
        };
    }
    e
}

fn nat_ctor(name: &str, inputs: Vec<String>) -> Item {
    Item::new(Decl::Constructor { name: name.into(), inputs, output: "nat".into(), literal: false, a: Some(1) })
}

fn interp_item(kind: InterpKind, cell: &str, params: &[&str], e: NatExpr) -> InterpEntry {
    InterpEntry {
        kind,
        cell: cell.to_string(),
        params: params.iter().map(|s| s.to_string()).collect(),
        exprs: vec![e],
    }
}

/// The machine equipped with a clock computing `clock` of the input size.
/// Only the arithmetic functions the clock needs are included. The main
/// function is `main`.
pub fn compile_clocked_tm_ast(tm: &TuringMachine, clock: &NatExpr) -> Result<ProgramAst, TmError> {
    tm.validate()?;
    tm.check_deterministic()?;
    let term = expand(clock)?;
    let (_, needs_mult) = uses(&term);
    let nat = || "nat".to_string();
    let mon = || "mon".to_string();

    let mut items = vec![Item::new(Decl::Sort("nat".into()))];
    items.push(nat_ctor("z", vec![]));
    items.push(nat_ctor("s", vec![nat()]));
    items.push(Item::new(Decl::Numeral { sort: nat(), zero: "z".into(), succ: "s".into() }));
    word_decls(tm, &mut items);
    items.push(Item::new(Decl::Function { name: "add".into(), inputs: vec![nat(), nat()], outputs: vec![nat()] }));
    if needs_mult {
        items.push(Item::new(Decl::Function { name: "mult".into(), inputs: vec![nat(), nat()], outputs: vec![nat()] }));
    }
    items.push(Item::new(Decl::Function { name: "size".into(), inputs: vec![mon()], outputs: vec![nat()] }));
    items.push(Item::new(Decl::Function { name: "clock".into(), inputs: vec![nat()], outputs: vec![nat()] }));
    items.push(Item::new(Decl::Function { name: "main".into(), inputs: vec![mon()], outputs: vec![mon()] }));
    step_functions(tm, true, &mut items);

    items.push(rule("add_z".into(), "add".into(), vec![pvar("z"), pvar("y")], name("y")));
    items.push(rule(
        "add_s".into(),
        "add".into(),
        vec![pctor("s", vec![pvar("x")]), pvar("y")],
        app("s", vec![app("add", vec![name("x"), name("y")])]),
    ));
    if needs_mult {
        items.push(rule(
            "mult_z".into(),
            "mult".into(),
            vec![pvar("x"), pvar("z")],
            Expr::Erase { vars: vec!["x".into()], body: Box::new(name("z")) },
        ));
        items.push(rule(
            "mult_s".into(),
            "mult".into(),
            vec![pvar("x"), pctor("s", vec![pvar("y")])],
            Expr::Let {
                vars: vec!["x1".into(), "x2".into()],
                value: Box::new(app("dup", vec![name("x")])),
                body: Box::new(app("add", vec![name("x1"), app("mult", vec![name("x2"), name("y")])])),
            },
        ));
    }
    items.push(rule("size_nil".into(), "size".into(), vec![pvar("nil")], name("z")));
    for c in tm.tape_letters() {
        let cname = letter_cell(tm, c);
        items.push(rule(
            format!("size_{cname}"),
            "size".into(),
            vec![pctor(&cname, vec![pvar("w")])],
            app("s", vec![app("size", vec![name("w")])]),
        ));
    }
    items.push(rule("clock".into(), "clock".into(), vec![pvar("n")], clock_rhs(&term)));
    items.push(rule(
        "main".into(),
        "main".into(),
        vec![pvar("w")],
        Expr::Let {
            vars: vec!["w1".into(), "w2".into()],
            value: Box::new(app("dup", vec![name("w")])),
            body: Box::new(app(
                &step_cell("cstep", tm, &tm.initial, tm.blank),
                vec![app("clock", vec![app("size", vec![name("w1")])]), name("nil"), name("w2")],
            )),
        },
    ));
    transition_rules(tm, true, &mut items);

    let (i, j, k) = (NatExpr::var(0), NatExpr::var(1), NatExpr::var(2));
    let plus = |a: NatExpr, b: NatExpr| NatExpr::Add(Box::new(a), Box::new(b));
    let times = |a: NatExpr, b: NatExpr| NatExpr::Mul(Box::new(a), Box::new(b));
    let mut entries = vec![
        interp_item(InterpKind::Current, "add", &["i", "j"], plus(i.clone(), j.clone())),
        interp_item(InterpKind::Heat, "add", &["i", "j"], i.clone()),
    ];
    if needs_mult {
        entries.push(interp_item(InterpKind::Current, "mult", &["i", "j"], times(i.clone(), j.clone())));
        entries.push(interp_item(
            InterpKind::Heat,
            "mult",
            &["i", "j"],
            times(plus(i.clone(), NatExpr::Const(1)), j.clone()),
        ));
    }
    entries.push(interp_item(InterpKind::Current, "size", &["i"], i.clone()));
    entries.push(interp_item(InterpKind::Heat, "size", &["i"], i.clone()));
    for q in &tm.states {
        for a in tm.tape_letters() {
            let cell = step_cell("cstep", tm, q, a);
            entries.push(interp_item(
                InterpKind::Current,
                &cell,
                &["i", "j", "k"],
                plus(plus(i.clone(), j.clone()), k.clone()),
            ));
            entries.push(interp_item(InterpKind::Heat, &cell, &["i", "j", "k"], i.clone()));
        }
    }

    // Clock current and heat come from its right-hand side.
    let mut ast = ProgramAst { name: format!("{}_clocked", tm.name), items };
    ast.items.push(Item::new(Decl::Interpretation(entries.clone())));
    let (prog, interp) = build(&ast);
    let clock_rule = prog.computation_rules().find(|r| r.name == "clock").expect("clock rule");
    let (cur, heat) = eval_symbolic(&prog.sig, &clock_rule.rhs, &interp).map_err(|e| TmError::Clock(e.to_string()))?;
    let clock_cur = cur[0].normalize().to_expr();
    let clock_heat = plus(heat, NatExpr::Const(1)).normalize().to_expr();
    entries.push(interp_item(InterpKind::Current, "clock", &["i"], clock_cur.clone()));
    entries.push(interp_item(InterpKind::Heat, "clock", &["i"], clock_heat.clone()));
    let main_cur = plus(plus(clock_cur.clone(), i.clone()), NatExpr::Const(1));
    let main_heat = plus(plus(plus(clock_heat, clock_cur), i.clone()), NatExpr::Const(1));
    entries.push(interp_item(InterpKind::Current, "main", &["i"], main_cur.normalize().to_expr()));
    entries.push(interp_item(InterpKind::Heat, "main", &["i"], main_heat.normalize().to_expr()));
    ast.items.pop();
    ast.items.push(Item::new(Decl::Interpretation(entries)));
    Ok(ast)
}

pub fn compile_clocked_tm(tm: &TuringMachine, clock: &NatExpr) -> Result<(Program, Interpretation), TmError> {
    Ok(build(&compile_clocked_tm_ast(tm, clock)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const HALT: &str = "machine halt\nalphabet a b\nblank _\ninitial h\nhalt h\n";

    #[test]
    fn parse_and_simulate_halting_machine() {
        let tm = TuringMachine::parse(HALT).unwrap();
        assert_eq!(tm_simulate(&tm, "ab", 10).unwrap(), ("ab".to_string(), 0));
    }

    #[test]
    fn partial_machine_is_rejected() {
        let text = "machine m\nalphabet a\nblank _\ninitial q\ntrans q _ -> q a R\n";
        assert!(matches!(TuringMachine::parse(text), Err(TmError::Partial { .. })));
        let bad = "machine m\nalphabet a\nblank _\ninitial q\ntrans q _ -> q a X\n";
        assert!(matches!(TuringMachine::parse(bad), Err(TmError::Syntax { line: 5, .. })));
    }

    #[test]
    fn step_limit() {
        let text = "machine loop\nalphabet a\nblank _\ninitial q\ntrans q _ -> q _ R\ntrans q a -> q a R\n";
        let tm = TuringMachine::parse(text).unwrap();
        assert_eq!(tm_simulate(&tm, "a", 5), Err(TmError::StepLimit(5)));
    }

    #[test]
    fn clock_expansion_uses_additions_only() {
        let e = NatExpr::add(NatExpr::mul(NatExpr::constant(2), NatExpr::var(0)), NatExpr::constant(2));
        let t = expand(&e).unwrap();
        assert_eq!(uses(&t), (2, false));
        let sq = NatExpr::mul(NatExpr::var(0), NatExpr::var(0));
        assert_eq!(uses(&expand(&sq).unwrap()), (2, true));
    }
}
