//! Elaboration of parsed programs into signatures, rules and
//! interpretations.
//!
//! Right-hand sides are laid out left to right as a planar 2-path. Wires
//! needed by a cell are brought next to each other by adjacent swaps
//! (insertion sort), each swap becoming one `swap[a,b]` cell. Closed
//! subterms float freely and never cost a swap.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{DiagramBuilder, NodeId, Src};
use crate::engine::rule::{CmpOp, Guard, LitPat, LitRef, Pattern, Rule, RuleKind};
use crate::interp::eval::{CellInterp, Interpretation};
use crate::program::{ListNotation, Notation, NumeralNotation, Program, WordNotation};
use crate::signature::{CellId, Signature, SortId};
use crate::syntax::ast::*;
use crate::syntax::parser::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
}

impl From<ParseError> for Diagnostic {
    fn from(e: ParseError) -> Self {
        Diagnostic { pos: e.pos, message: e.message }
    }
}

type EResult<T> = Result<T, String>;

fn lookup_sort(sig: &Signature, name: &str) -> EResult<SortId> {
    sig.sort_id(name).ok_or_else(|| format!("unknown sort `{name}`"))
}

fn lookup_cell(sig: &Signature, name: &str) -> EResult<CellId> {
    sig.cell_id(name).ok_or_else(|| format!("unknown cell `{name}`"))
}

/// First literal-family constructor of the sort.
pub fn literal_cell(sig: &Signature, sort: SortId) -> Option<CellId> {
    sig.constructors().find(|(_, c)| c.literal_family && c.target[0] == sort).map(|(id, _)| id)
}

struct PatCtx<'a> {
    sig: &'a Signature,
    notation: &'a Notation,
    vars: Vec<(String, SortId)>,
    binders: Vec<(String, CellId)>,
}

impl PatCtx<'_> {
    fn pattern(&mut self, p: &PatAst, sort: SortId) -> EResult<Pattern> {
        let sig = self.sig;
        match p {
            PatAst::Name(n) => {
                if let Some(id) = sig.cell_id(n) {
                    let c = sig.cell(id);
                    if c.is_constructor() && c.source.is_empty() && !c.literal_family {
                        if c.target[0] != sort {
                            return Err(format!("`{n}` has sort {}, expected {}", sig.sort_name(c.target[0]), sig.sort_name(sort)));
                        }
                        return Ok(Pattern::Ctor { cell: id, lit: None, args: vec![] });
                    }
                }
                if self.vars.iter().any(|(v, _)| v == n) {
                    return Err(format!("variable `{n}` occurs twice in the pattern"));
                }
                self.vars.push((n.clone(), sort));
                Ok(Pattern::Var(self.vars.len() - 1))
            }
            PatAst::Ctor(n, args) => {
                let id = lookup_cell(sig, n)?;
                let c = sig.cell(id);
                if !c.is_constructor() {
                    return Err(format!("`{n}` is not a constructor"));
                }
                if c.target[0] != sort {
                    return Err(format!("`{n}` has sort {}, expected {}", sig.sort_name(c.target[0]), sig.sort_name(sort)));
                }
                if c.source.len() != args.len() {
                    return Err(format!("`{n}` takes {} arguments, {} given", c.source.len(), args.len()));
                }
                let source = c.source.clone();
                let args = args.iter().zip(source).map(|(a, s)| self.pattern(a, s)).collect::<EResult<Vec<_>>>()?;
                Ok(Pattern::Ctor { cell: id, lit: None, args })
            }
            PatAst::Num(k) => {
                if let Some(cell) = literal_cell(sig, sort) {
                    return Ok(Pattern::Ctor { cell, lit: Some(LitPat::Exact(*k)), args: vec![] });
                }
                match self.notation.numerals.iter().find(|n| n.sort == sort) {
                    Some(num) => {
                        let mut p = Pattern::Ctor { cell: num.zero, lit: None, args: vec![] };
                        for _ in 0..*k {
                            p = Pattern::Ctor { cell: num.succ, lit: None, args: vec![p] };
                        }
                        Ok(p)
                    }
                    None => Err(format!("sort {} has no numeric literals", sig.sort_name(sort))),
                }
            }
            PatAst::Bind(n) => {
                let cell = literal_cell(sig, sort)
                    .ok_or_else(|| format!("binder `#{n}` on sort {} without literals", sig.sort_name(sort)))?;
                if self.binders.iter().any(|(b, _)| b == n) {
                    return Err(format!("binder `#{n}` occurs twice"));
                }
                self.binders.push((n.clone(), cell));
                Ok(Pattern::Ctor { cell, lit: Some(LitPat::Bind(self.binders.len() - 1)), args: vec![] })
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Handle {
    src: Src,
    sort: SortId,
    closed: bool,
}

struct RhsCtx<'a> {
    sig: &'a Signature,
    notation: &'a Notation,
    b: DiagramBuilder<'a>,
    handles: Vec<Handle>,
    live: Vec<usize>,
    names: HashMap<String, usize>,
    consumed: Vec<String>,
    binders: &'a [(String, CellId)],
    lits: Vec<(NodeId, usize)>,
}

impl<'a> RhsCtx<'a> {
    fn fresh(&mut self, src: Src, sort: SortId, closed: bool) -> usize {
        self.handles.push(Handle { src, sort, closed });
        self.handles.len() - 1
    }

    fn pos(&self, h: usize) -> usize {
        self.live.iter().position(|x| *x == h).expect("handle is live")
    }

    /// Swaps `live[i]` and `live[i + 1]`, emitting a swap cell when both
    /// wires are open.
    fn swap_adjacent(&mut self, i: usize) {
        let (l, r) = (self.live[i], self.live[i + 1]);
        let (hl, hr) = (self.handles[l], self.handles[r]);
        if !hl.closed && !hr.closed {
            let outs = self
                .b
                .add(self.sig.tau(hl.sort, hr.sort), None, &[hl.src, hr.src])
                .expect("swap is well typed");
            self.handles[r].src = outs[0];
            self.handles[l].src = outs[1];
        }
        self.live.swap(i, i + 1);
    }

    /// Makes `hs` contiguous and ordered in the live list; returns the
    /// index of the first one.
    fn gather(&mut self, hs: &[usize]) -> usize {
        if hs.is_empty() {
            return self.live.len();
        }
        let open: Vec<usize> = hs.iter().copied().filter(|h| !self.handles[*h].closed).collect();
        self.live.retain(|h| !hs.contains(h) || !self.handles[*h].closed);
        for w in 1..open.len() {
            let (prev, cur) = (open[w - 1], open[w]);
            let (pp, pc) = (self.pos(prev), self.pos(cur));
            if pc > pp {
                for i in (pp + 1..pc).rev() {
                    self.swap_adjacent(i);
                }
            } else {
                // `cur` crosses every wire up to and including `prev`.
                for i in pc..pp {
                    self.swap_adjacent(i);
                }
            }
        }
        let start = match open.first() {
            Some(h) => self.pos(*h),
            None => self.live.len(),
        };
        let mut at = start;
        for h in hs {
            if self.handles[*h].closed {
                self.live.insert(at, *h);
            }
            at += 1;
        }
        start
    }

    fn add_cell(&mut self, cell: CellId, lit: Option<u64>, args: &[usize]) -> EResult<Vec<usize>> {
        let start = self.gather(args);
        let srcs: Vec<Src> = args.iter().map(|h| self.handles[*h].src).collect();
        let closed = args.iter().all(|h| self.handles[*h].closed);
        let outs = self.b.add(cell, lit, &srcs).map_err(|e| e.to_string())?;
        let target = self.sig.cell(cell).target.clone();
        let new: Vec<usize> = outs.iter().zip(target).map(|(s, t)| self.fresh(*s, t, closed)).collect();
        self.live.splice(start..start + args.len(), new.iter().copied());
        Ok(new)
    }

    fn literal(&mut self, k: u64, sort: Option<SortId>) -> EResult<Vec<usize>> {
        let sort = sort.ok_or("cannot infer the sort of a numeric literal here")?;
        if let Some(cell) = literal_cell(self.sig, sort) {
            return self.add_cell(cell, Some(k), &[]);
        }
        let num = self
            .notation
            .numerals
            .iter()
            .find(|n| n.sort == sort)
            .ok_or_else(|| format!("sort {} has no numeric literals", self.sig.sort_name(sort)))?
            .clone();
        let mut h = self.add_cell(num.zero, None, &[])?;
        for _ in 0..k {
            h = self.add_cell(num.succ, None, &h)?;
        }
        Ok(h)
    }

    fn use_var(&mut self, n: &str) -> EResult<Option<usize>> {
        if let Some(h) = self.names.remove(n) {
            self.consumed.push(n.to_string());
            return Ok(Some(h));
        }
        if self.consumed.iter().any(|c| c == n) {
            return Err(format!("variable `{n}` is used more than once; duplicate it with dup"));
        }
        Ok(None)
    }

    fn expr(&mut self, e: &Expr, expected: Option<&[SortId]>) -> EResult<Vec<usize>> {
        let first = expected.and_then(|s| s.first().copied());
        match e {
            Expr::Name(n) => {
                if let Some(h) = self.use_var(n)? {
                    return Ok(vec![h]);
                }
                let id = self.sig.cell_id(n).ok_or_else(|| format!("unknown variable or constructor `{n}`"))?;
                let c = self.sig.cell(id);
                if !c.is_constructor() || !c.source.is_empty() || c.literal_family {
                    return Err(format!("`{n}` needs arguments"));
                }
                self.add_cell(id, None, &[])
            }
            Expr::Num(k) => self.literal(*k, first),
            Expr::Bind(n) => {
                let (idx, cell) = self
                    .binders
                    .iter()
                    .enumerate()
                    .find(|(_, (b, _))| b == n)
                    .map(|(i, (_, c))| (i, *c))
                    .ok_or_else(|| format!("unknown binder `#{n}`"))?;
                let hs = self.add_cell(cell, Some(0), &[])?;
                if let Src::Node(node, _) = self.handles[hs[0]].src {
                    self.lits.push((node, idx));
                }
                Ok(hs)
            }
            Expr::Tuple(items) => {
                let mut out = Vec::new();
                for it in items {
                    let exp = expected.and_then(|s| s.get(out.len()..));
                    out.extend(self.expr(it, exp)?);
                }
                Ok(out)
            }
            Expr::App(name, args) if name == "dup" => {
                if args.len() != 1 {
                    return Err("dup takes exactly one argument".into());
                }
                let hs = self.expr(&args[0], None)?;
                if hs.len() != 1 {
                    return Err("dup takes exactly one wire".into());
                }
                let sort = self.handles[hs[0]].sort;
                self.add_cell(self.sig.delta(sort), None, &hs)
            }
            Expr::App(name, args) => {
                let id = lookup_cell(self.sig, name)?;
                let c = self.sig.cell(id).clone();
                if c.is_structure() || c.literal_family {
                    return Err(format!("`{name}` cannot be applied here"));
                }
                let mut hs = Vec::new();
                for a in args {
                    let exp = c.source.get(hs.len()..);
                    hs.extend(self.expr(a, exp)?);
                }
                let sorts: Vec<SortId> = hs.iter().map(|h| self.handles[*h].sort).collect();
                if sorts != c.source {
                    return Err(format!(
                        "`{name}` expects ({}), got ({})",
                        self.sig.path_names(&c.source),
                        self.sig.path_names(&sorts)
                    ));
                }
                self.add_cell(id, None, &hs)
            }
            Expr::Let { vars, value, body } => {
                let hs = self.expr(value, None)?;
                if hs.len() != vars.len() {
                    return Err(format!("`let` binds {} names to {} values", vars.len(), hs.len()));
                }
                for (v, h) in vars.iter().zip(hs) {
                    if self.names.contains_key(v) {
                        return Err(format!("`{v}` is already bound"));
                    }
                    self.consumed.retain(|c| c != v);
                    self.names.insert(v.clone(), h);
                }
                self.expr(body, expected)
            }
            Expr::Erase { vars, body } => {
                for v in vars {
                    let h = self.use_var(v)?.ok_or_else(|| format!("unknown variable `{v}`"))?;
                    let sort = self.handles[h].sort;
                    self.add_cell(self.sig.eps(sort), None, &[h])?;
                }
                self.expr(body, expected)
            }
        }
    }
}

fn guard(g: &GuardAst, binders: &[(String, CellId)]) -> EResult<Guard> {
    let atom = |a: &LitAtom| match a {
        LitAtom::Num(n) => Ok(LitRef::Const(*n)),
        LitAtom::Bind(b) => binders
            .iter()
            .position(|(n, _)| n == b)
            .map(LitRef::Binder)
            .ok_or_else(|| format!("unknown binder `#{b}`")),
    };
    let (l, r) = (atom(&g.lhs)?, atom(&g.rhs)?);
    Ok(match g.op {
        GuardOp::Le => Guard { lhs: l, op: CmpOp::Le, rhs: r },
        GuardOp::Lt => Guard { lhs: l, op: CmpOp::Lt, rhs: r },
        GuardOp::Eq => Guard { lhs: l, op: CmpOp::Eq, rhs: r },
        GuardOp::Ge => Guard { lhs: r, op: CmpOp::Le, rhs: l },
        GuardOp::Gt => Guard { lhs: r, op: CmpOp::Lt, rhs: l },
    })
}

/// Builds one computation rule.
pub fn elaborate_rule(sig: &Signature, notation: &Notation, r: &RuleAst) -> EResult<Rule> {
    let head = lookup_cell(sig, &r.head)?;
    let hc = sig.cell(head).clone();
    if !hc.is_function() {
        return Err(format!("`{}` is not a function", r.head));
    }
    if hc.source.len() != r.args.len() {
        return Err(format!("`{}` takes {} arguments, {} given", r.head, hc.source.len(), r.args.len()));
    }
    let mut pc = PatCtx { sig, notation, vars: Vec::new(), binders: Vec::new() };
    let args = r.args.iter().zip(&hc.source).map(|(p, s)| pc.pattern(p, *s)).collect::<EResult<Vec<_>>>()?;
    let guards = r.guards.iter().map(|g| guard(g, &pc.binders)).collect::<EResult<Vec<_>>>()?;
    let var_sorts: Vec<SortId> = pc.vars.iter().map(|(_, s)| *s).collect();

    let b = DiagramBuilder::new(sig, &var_sorts);
    let mut ctx = RhsCtx {
        sig,
        notation,
        b,
        handles: Vec::new(),
        live: Vec::new(),
        names: HashMap::new(),
        consumed: Vec::new(),
        binders: &pc.binders,
        lits: Vec::new(),
    };
    for (i, (name, sort)) in pc.vars.iter().enumerate() {
        let h = ctx.fresh(Src::Input(i), *sort, false);
        ctx.live.push(h);
        ctx.names.insert(name.clone(), h);
    }
    let result = ctx.expr(&r.rhs, Some(&hc.target))?;
    if let Some(n) = pc.vars.iter().map(|(n, _)| n).find(|n| ctx.names.contains_key(*n)) {
        return Err(format!("variable `{n}` is never used; discard it with erase"));
    }
    if let Some(n) = ctx.names.keys().min() {
        return Err(format!("variable `{n}` is never used; discard it with erase"));
    }
    let sorts: Vec<SortId> = result.iter().map(|h| ctx.handles[*h].sort).collect();
    if sorts != hc.target {
        return Err(format!(
            "right-hand side has sort ({}), expected ({})",
            sig.path_names(&sorts),
            sig.path_names(&hc.target)
        ));
    }
    ctx.gather(&result);
    debug_assert_eq!(ctx.live, result);
    let outs: Vec<Src> = result.iter().map(|h| ctx.handles[*h].src).collect();
    let lits = std::mem::take(&mut ctx.lits);
    let rhs = ctx.b.finish(&outs);
    Rule::new(sig, &r.name, RuleKind::Computation, head, args, guards, rhs, lits).map_err(|e| e.to_string())
}

/// Declarations, rules and interpretation entries in one pass.
pub fn elaborate(ast: &ProgramAst) -> Result<(Program, Interpretation), Diagnostic> {
    let mut sig = Signature::new();
    let mut notation = Notation::default();
    let mut constants: Vec<(CellId, u64)> = Vec::new();
    let mut rules = Vec::new();
    let mut entries = Vec::new();
    let err = |pos: Pos| move |message: String| Diagnostic { pos, message };

    for item in &ast.items {
        let e = err(item.pos);
        match &item.decl {
            Decl::Sort(n) => {
                sig.add_sort(n).map_err(|x| e(x.to_string()))?;
            }
            Decl::Constructor { name, inputs, output, literal, a } => {
                let ins = inputs.iter().map(|s| lookup_sort(&sig, s)).collect::<EResult<Vec<_>>>().map_err(e)?;
                let out = lookup_sort(&sig, output).map_err(e)?;
                let id = sig.add_constructor(name, ins, out, *literal).map_err(|x| e(x.to_string()))?;
                constants.push((id, a.unwrap_or(1)));
            }
            Decl::Function { name, inputs, outputs } => {
                let ins = inputs.iter().map(|s| lookup_sort(&sig, s)).collect::<EResult<Vec<_>>>().map_err(e)?;
                let outs = outputs.iter().map(|s| lookup_sort(&sig, s)).collect::<EResult<Vec<_>>>().map_err(e)?;
                sig.add_function(name, ins, outs).map_err(|x| e(x.to_string()))?;
            }
            Decl::Numeral { sort, zero, succ } => {
                let s = lookup_sort(&sig, sort).map_err(e)?;
                let (z, sc) = (lookup_cell(&sig, zero).map_err(e)?, lookup_cell(&sig, succ).map_err(e)?);
                let ok = sig.cell(z).is_constructor()
                    && sig.cell(z).source.is_empty()
                    && sig.cell(z).target == vec![s]
                    && sig.cell(sc).is_constructor()
                    && sig.cell(sc).source == vec![s]
                    && sig.cell(sc).target == vec![s];
                if !ok {
                    return Err(e(format!("`{zero}`/`{succ}` do not form numerals of sort {sort}")));
                }
                notation.numerals.push(NumeralNotation { sort: s, zero: z, succ: sc });
            }
            Decl::List { sort, nil, cons } => {
                let s = lookup_sort(&sig, sort).map_err(e)?;
                let (n, c) = (lookup_cell(&sig, nil).map_err(e)?, lookup_cell(&sig, cons).map_err(e)?);
                let ok = sig.cell(n).is_constructor()
                    && sig.cell(n).source.is_empty()
                    && sig.cell(n).target == vec![s]
                    && sig.cell(c).is_constructor()
                    && sig.cell(c).source.len() == 2
                    && sig.cell(c).source[1] == s
                    && sig.cell(c).target == vec![s];
                if !ok {
                    return Err(e(format!("`{nil}`/`{cons}` do not form lists of sort {sort}")));
                }
                notation.lists.push(ListNotation { sort: s, nil: n, cons: c });
            }
            Decl::Word { sort, nil, letters } => {
                let s = lookup_sort(&sig, sort).map_err(e)?;
                let n = lookup_cell(&sig, nil).map_err(e)?;
                let mut ls = Vec::new();
                for (cell, ch) in letters {
                    let id = lookup_cell(&sig, cell).map_err(e)?;
                    let c = sig.cell(id);
                    if !c.is_constructor() || c.source != vec![s] || c.target != vec![s] {
                        return Err(e(format!("`{cell}` is not a letter of sort {sort}")));
                    }
                    ls.push((id, *ch));
                }
                notation.words.push(WordNotation { sort: s, nil: n, letters: ls });
            }
            Decl::Rule(r) => rules.push((item.pos, r)),
            Decl::Interpretation(es) => entries.extend(es.iter().map(|x| (item.pos, x))),
        }
    }

    let mut computation = Vec::new();
    for (pos, r) in rules {
        let rule = elaborate_rule(&sig, &notation, r).map_err(|m| Diagnostic { pos, message: format!("rule `{}`: {m}", r.name) })?;
        computation.push(rule);
    }

    let mut interp = Interpretation::new(&sig);
    for (id, a) in constants {
        interp.set_constructor(&sig, id, a).expect("declared as constructor");
    }
    for (pos, en) in entries {
        let e = err(pos);
        let id = lookup_cell(&sig, &en.cell).map_err(e)?;
        let c = sig.cell(id).clone();
        if en.params.len() != c.source.len() {
            return Err(e(format!("`{}` has {} inputs, {} parameters given", en.cell, c.source.len(), en.params.len())));
        }
        let previous = interp.get(id).cloned();
        let ci = match en.kind {
            InterpKind::Current => {
                if en.exprs.len() != c.target.len() {
                    return Err(e(format!("`{}` has {} outputs, {} currents given", en.cell, c.target.len(), en.exprs.len())));
                }
                CellInterp {
                    current: en.exprs.clone(),
                    heat: previous.map(|p| p.heat).unwrap_or(crate::interp::expr::NatExpr::Const(0)),
                }
            }
            InterpKind::Heat => match previous {
                Some(p) => CellInterp { current: p.current, heat: en.exprs[0].clone() },
                None => {
                    return Err(e(format!("give the current of `{}` before its heat", en.cell)));
                }
            },
        };
        interp.set(&sig, id, ci).map_err(|x| e(x.to_string()))?;
    }
    let prog = Program::new(&ast.name, sig, computation, notation);
    Ok((prog, interp))
}
