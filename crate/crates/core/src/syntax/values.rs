//! Reading and writing values in the notation a program declares.
//!
//! Numerals print as decimals, lists as `[a, b]`, words as `"ab"`, literal
//! families as their index, anything else as a constructor term.

use crate::program::Program;
use crate::signature::SortId;
use crate::syntax::elab::{literal_cell, Diagnostic};
use crate::syntax::parser::{Parser, Tok};
use crate::value::Value;

pub fn print_value(prog: &Program, v: &Value) -> String {
    let sig = &prog.sig;
    let n = &prog.notation;
    let sort = v.sort(sig);
    if let Some(num) = n.numerals.iter().find(|x| x.sort == sort) {
        let mut k = 0;
        let mut cur = v;
        while cur.cell == num.succ {
            k += 1;
            cur = &cur.args[0];
        }
        if cur.cell == num.zero {
            return k.to_string();
        }
    }
    if let Some(list) = n.lists.iter().find(|x| x.sort == sort) {
        let mut items = Vec::new();
        let mut cur = v;
        while cur.cell == list.cons {
            items.push(print_value(prog, &cur.args[0]));
            cur = &cur.args[1];
        }
        if cur.cell == list.nil {
            return format!("[{}]", items.join(", "));
        }
    }
    if let Some(word) = n.words.iter().find(|x| x.sort == sort) {
        let mut s = String::new();
        let mut cur = v;
        while let Some((_, ch)) = word.letters.iter().find(|(c, _)| *c == cur.cell) {
            s.push(*ch);
            cur = &cur.args[0];
        }
        if cur.cell == word.nil {
            return format!("\"{s}\"");
        }
    }
    if let Some(k) = v.lit {
        return k.to_string();
    }
    let name = &sig.cell(v.cell).name;
    if v.args.is_empty() {
        name.clone()
    } else {
        format!("{name}({})", v.args.iter().map(|a| print_value(prog, a)).collect::<Vec<_>>().join(", "))
    }
}

fn value(p: &mut ValueParser<'_>, sort: SortId) -> Result<Value, String> {
    let prog = p.prog;
    let sig = &prog.sig;
    match p.parser_peek() {
        Tok::Num(k) => {
            p.bump();
            if let Some(cell) = literal_cell(sig, sort) {
                return Ok(Value::literal(cell, k));
            }
            let num = prog
                .notation
                .numerals
                .iter()
                .find(|x| x.sort == sort)
                .ok_or_else(|| format!("sort {} has no numeric notation", sig.sort_name(sort)))?;
            let mut v = Value::leaf(num.zero);
            for _ in 0..k {
                v = Value::apply(num.succ, vec![v]);
            }
            Ok(v)
        }
        Tok::Sym("[") => {
            p.bump();
            let list = prog
                .notation
                .lists
                .iter()
                .find(|x| x.sort == sort)
                .ok_or_else(|| format!("sort {} has no list notation", sig.sort_name(sort)))?;
            let elem = sig.cell(list.cons).source[0];
            let mut items = Vec::new();
            if !p.eat("]") {
                loop {
                    items.push(value(p, elem)?);
                    if !p.eat(",") {
                        break;
                    }
                }
                if !p.eat("]") {
                    return Err("expected `]`".into());
                }
            }
            Ok(items.into_iter().rev().fold(Value::leaf(list.nil), |acc, x| Value::apply(list.cons, vec![x, acc])))
        }
        Tok::Str(s) => {
            p.bump();
            let word = prog
                .notation
                .words
                .iter()
                .find(|x| x.sort == sort)
                .ok_or_else(|| format!("sort {} has no word notation", sig.sort_name(sort)))?;
            let mut v = Value::leaf(word.nil);
            for ch in s.chars().rev() {
                let (cell, _) = word
                    .letters
                    .iter()
                    .find(|(_, c)| *c == ch)
                    .ok_or_else(|| format!("`{ch}` is not a letter of sort {}", sig.sort_name(sort)))?;
                v = Value::apply(*cell, vec![v]);
            }
            Ok(v)
        }
        Tok::Ident(name) => {
            p.bump();
            let id = sig.cell_id(&name).ok_or_else(|| format!("unknown constructor `{name}`"))?;
            let c = sig.cell(id);
            if !c.is_constructor() || c.literal_family {
                return Err(format!("`{name}` is not a plain constructor"));
            }
            if c.target[0] != sort {
                return Err(format!("`{name}` has sort {}, expected {}", sig.sort_name(c.target[0]), sig.sort_name(sort)));
            }
            let mut args = Vec::new();
            if p.eat("(") {
                for (i, s) in c.source.iter().enumerate() {
                    if i > 0 && !p.eat(",") {
                        return Err("expected `,`".into());
                    }
                    args.push(value(p, *s)?);
                }
                if !p.eat(")") {
                    return Err("expected `)`".into());
                }
            }
            if args.len() != c.source.len() {
                return Err(format!("`{name}` takes {} arguments", c.source.len()));
            }
            Ok(Value::apply(id, args))
        }
        t => Err(format!("unexpected {t} in a value")),
    }
}

struct ValueParser<'a> {
    prog: &'a Program,
    inner: Parser,
}

impl ValueParser<'_> {
    fn parser_peek(&self) -> Tok {
        self.inner.peek_tok().clone()
    }

    fn bump(&mut self) {
        self.inner.bump_tok();
    }

    fn eat(&mut self, sym: &str) -> bool {
        self.inner.eat_sym(sym)
    }
}

/// Parses one value of the given sort.
pub fn parse_value(prog: &Program, text: &str, sort: SortId) -> Result<Value, Diagnostic> {
    let inner = Parser::new(text)?;
    let mut p = ValueParser { prog, inner };
    let pos = p.inner.position();
    let v = value(&mut p, sort).map_err(|message| Diagnostic { pos, message })?;
    if !p.inner.at_eof() {
        return Err(Diagnostic { pos: p.inner.position(), message: "trailing input after value".into() });
    }
    Ok(v)
}
