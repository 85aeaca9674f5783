//! Lexer and recursive-descent parser for program files.

use thiserror::Error;

use crate::interp::expr::NatExpr;
use crate::syntax::ast::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const SYMBOLS: [&str; 20] = [
    "->", "=>", "<=", ">=", "(", ")", "[", "]", "{", "}", ",", ";", ":", "=", "<", ">", "+", "*", "^", "/",
];

pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                advance(&mut i, &mut line, &mut col, 1);
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError { pos, message: format!("number `{s}` is too large") })?;
            out.push((Tok::Num(n), pos));
        } else if c == '"' {
            advance(&mut i, &mut line, &mut col, 1);
            let start = i;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(ParseError { pos, message: "unterminated string".into() });
            }
            let s: String = chars[start..i].iter().collect();
            advance(&mut i, &mut line, &mut col, 1);
            out.push((Tok::Str(s), pos));
        } else if c == '#' {
            // `#p` is a literal binder; kept as one token.
            advance(&mut i, &mut line, &mut col, 1);
            out.push((Tok::Sym("#"), pos));
        } else {
            let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let sym = SYMBOLS.iter().find(|s| rest.starts_with(**s)).ok_or_else(|| ParseError {
                pos,
                message: format!("unexpected character `{c}`"),
            })?;
            advance(&mut i, &mut line, &mut col, sym.chars().count());
            out.push((Tok::Sym(sym), pos));
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(text: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn expected<T>(&self, what: &str) -> PResult<T> {
        self.error(format!("expected {what}, found {}", self.peek()))
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> PResult<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.expected(&format!("`{sym}`"))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.expected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.expected("identifier"),
        }
    }

    fn num(&mut self) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.expected("number"),
        }
    }

    pub fn peek_tok(&self) -> &Tok {
        self.peek()
    }

    pub fn bump_tok(&mut self) -> Tok {
        self.bump()
    }

    pub fn eat_sym(&mut self, sym: &str) -> bool {
        self.eat(sym)
    }

    pub fn position(&self) -> Pos {
        self.pos()
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn program(&mut self) -> PResult<ProgramAst> {
        self.keyword("polygraph")?;
        let name = self.ident()?;
        self.expect(";")?;
        let mut items = Vec::new();
        while !self.at_eof() {
            let pos = self.pos();
            let decl = self.decl()?;
            items.push(Item { pos, decl });
        }
        Ok(ProgramAst { name, items })
    }

    fn sort_list(&mut self) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        if let Tok::Ident(_) = self.peek() {
            out.push(self.ident()?);
            while self.eat(",") {
                out.push(self.ident()?);
            }
        }
        Ok(out)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.expected("a declaration"),
        };
        match kw.as_str() {
            "sort" => {
                self.bump();
                let name = self.ident()?;
                self.expect(";")?;
                Ok(Decl::Sort(name))
            }
            "constructor" => {
                self.bump();
                let name = self.ident()?;
                self.expect(":")?;
                let inputs = self.sort_list()?;
                self.expect("->")?;
                let output = self.ident()?;
                let (mut literal, mut a) = (false, None);
                if self.eat("[") {
                    loop {
                        if self.is_keyword("literal") {
                            self.bump();
                            literal = true;
                        } else if self.is_keyword("a") {
                            self.bump();
                            self.expect("=")?;
                            a = Some(self.num()?);
                        } else {
                            return self.expected("`literal` or `a = N`");
                        }
                        if !self.eat(",") {
                            break;
                        }
                    }
                    self.expect("]")?;
                }
                self.expect(";")?;
                Ok(Decl::Constructor { name, inputs, output, literal, a })
            }
            "function" => {
                self.bump();
                let name = self.ident()?;
                self.expect(":")?;
                let inputs = self.sort_list()?;
                self.expect("->")?;
                let outputs = self.sort_list()?;
                self.expect(";")?;
                Ok(Decl::Function { name, inputs, outputs })
            }
            "numeral" | "list" => {
                self.bump();
                let sort = self.ident()?;
                self.expect("=")?;
                let first = self.ident()?;
                let second = self.ident()?;
                self.expect(";")?;
                Ok(if kw == "numeral" {
                    Decl::Numeral { sort, zero: first, succ: second }
                } else {
                    Decl::List { sort, nil: first, cons: second }
                })
            }
            "word" => {
                self.bump();
                let sort = self.ident()?;
                self.expect("=")?;
                let nil = self.ident()?;
                self.expect("{")?;
                let mut letters = Vec::new();
                while !self.eat("}") {
                    let cell = self.ident()?;
                    self.expect("=")?;
                    let pos = self.pos();
                    let ch = match self.bump() {
                        Tok::Str(s) if s.chars().count() == 1 => s.chars().next().expect("one char"),
                        _ => return Err(ParseError { pos, message: "expected a one-character string".into() }),
                    };
                    letters.push((cell, ch));
                    if !self.eat(",") {
                        self.expect("}")?;
                        break;
                    }
                }
                self.expect(";")?;
                Ok(Decl::Word { sort, nil, letters })
            }
            "rule" => {
                self.bump();
                Ok(Decl::Rule(self.rule()?))
            }
            "interpretation" => {
                self.bump();
                self.expect("{")?;
                let mut entries = Vec::new();
                while !self.eat("}") {
                    entries.push(self.interp_entry()?);
                }
                Ok(Decl::Interpretation(entries))
            }
            _ => self.expected("a declaration"),
        }
    }

    fn rule(&mut self) -> PResult<RuleAst> {
        let name = self.ident()?;
        self.expect(":")?;
        let head = self.ident()?;
        self.expect("(")?;
        let mut args = Vec::new();
        if !self.eat(")") {
            loop {
                args.push(self.pattern()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
        }
        let mut guards = Vec::new();
        if self.is_keyword("when") {
            self.bump();
            loop {
                guards.push(self.guard()?);
                if !self.is_keyword("and") {
                    break;
                }
                self.bump();
            }
        }
        self.expect("=>")?;
        let rhs = self.expr()?;
        self.expect(";")?;
        Ok(RuleAst { name, head, args, guards, rhs })
    }

    fn pattern(&mut self) -> PResult<PatAst> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(PatAst::Num(n))
            }
            Tok::Sym("#") => {
                self.bump();
                Ok(PatAst::Bind(self.ident()?))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.eat("(") {
                    let mut args = Vec::new();
                    if !self.eat(")") {
                        loop {
                            args.push(self.pattern()?);
                            if !self.eat(",") {
                                break;
                            }
                        }
                        self.expect(")")?;
                    }
                    Ok(PatAst::Ctor(name, args))
                } else {
                    Ok(PatAst::Name(name))
                }
            }
            _ => self.expected("a pattern"),
        }
    }

    fn lit_atom(&mut self) -> PResult<LitAtom> {
        if self.eat("#") {
            Ok(LitAtom::Bind(self.ident()?))
        } else {
            Ok(LitAtom::Num(self.num()?))
        }
    }

    fn guard(&mut self) -> PResult<GuardAst> {
        let lhs = self.lit_atom()?;
        let op = match self.bump() {
            Tok::Sym("<=") => GuardOp::Le,
            Tok::Sym("<") => GuardOp::Lt,
            Tok::Sym("=") => GuardOp::Eq,
            Tok::Sym(">=") => GuardOp::Ge,
            Tok::Sym(">") => GuardOp::Gt,
            _ => {
                self.at -= 1;
                return self.expected("a comparison");
            }
        };
        let rhs = self.lit_atom()?;
        Ok(GuardAst { lhs, op, rhs })
    }

    fn names(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.ident()?];
        while self.eat(",") {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        if self.is_keyword("let") {
            self.bump();
            let vars = if self.eat("(") {
                let v = self.names()?;
                self.expect(")")?;
                v
            } else {
                vec![self.ident()?]
            };
            self.expect("=")?;
            let value = self.expr()?;
            self.keyword("in")?;
            let body = self.expr()?;
            return Ok(Expr::Let { vars, value: Box::new(value), body: Box::new(body) });
        }
        if self.is_keyword("erase") && matches!(self.peek2(), Tok::Ident(_)) {
            self.bump();
            let vars = self.names()?;
            self.keyword("in")?;
            let body = self.expr()?;
            return Ok(Expr::Erase { vars, body: Box::new(body) });
        }
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::Sym("#") => {
                self.bump();
                Ok(Expr::Bind(self.ident()?))
            }
            Tok::Sym("(") => {
                self.bump();
                let mut items = Vec::new();
                if !self.eat(")") {
                    loop {
                        items.push(self.expr()?);
                        if !self.eat(",") {
                            break;
                        }
                    }
                    self.expect(")")?;
                }
                Ok(Expr::Tuple(items))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.eat("(") {
                    let mut args = Vec::new();
                    if !self.eat(")") {
                        loop {
                            args.push(self.expr()?);
                            if !self.eat(",") {
                                break;
                            }
                        }
                        self.expect(")")?;
                    }
                    Ok(Expr::App(name, args))
                } else {
                    Ok(Expr::Name(name))
                }
            }
            _ => self.expected("an expression"),
        }
    }

    fn interp_entry(&mut self) -> PResult<InterpEntry> {
        let kind = if self.is_keyword("current") {
            InterpKind::Current
        } else if self.is_keyword("heat") {
            InterpKind::Heat
        } else {
            return self.expected("`current` or `heat`");
        };
        self.bump();
        let cell = self.ident()?;
        self.expect("(")?;
        let params = if self.eat(")") {
            vec![]
        } else {
            let p = self.names()?;
            self.expect(")")?;
            p
        };
        self.expect("=")?;
        let exprs = if kind == InterpKind::Current && matches!(self.peek(), Tok::Sym("(")) && self.is_tuple() {
            self.bump();
            let mut v = Vec::new();
            if !self.eat(")") {
                loop {
                    v.push(self.nat_expr(&params)?);
                    if !self.eat(",") {
                        break;
                    }
                }
                self.expect(")")?;
            }
            v
        } else {
            vec![self.nat_expr(&params)?]
        };
        self.expect(";")?;
        Ok(InterpEntry { kind, cell, params, exprs })
    }

    /// A parenthesis opening a tuple: empty, or with a comma at depth one
    /// before its matching close.
    fn is_tuple(&self) -> bool {
        let mut depth = 0usize;
        for (t, _) in &self.toks[self.at..] {
            match t {
                Tok::Sym("(") => depth += 1,
                Tok::Sym(")") => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                Tok::Sym(",") if depth == 1 => return true,
                Tok::Eof => break,
                _ => {}
            }
        }
        matches!(self.peek2(), Tok::Sym(")"))
    }

    /// `sum := product ('+' product)*`, left-nested.
    pub fn nat_expr(&mut self, params: &[String]) -> PResult<NatExpr> {
        let mut e = self.nat_product(params)?;
        while self.eat("+") {
            let r = self.nat_product(params)?;
            e = NatExpr::Add(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn nat_product(&mut self, params: &[String]) -> PResult<NatExpr> {
        let mut e = self.nat_power(params)?;
        while self.eat("*") {
            let r = self.nat_power(params)?;
            e = NatExpr::Mul(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn nat_power(&mut self, params: &[String]) -> PResult<NatExpr> {
        let base = self.nat_atom(params)?;
        if self.eat("^") {
            let n = self.num()?;
            if n == 0 {
                return Ok(NatExpr::Const(1));
            }
            let mut e = base.clone();
            for _ in 1..n {
                e = NatExpr::Mul(Box::new(e), Box::new(base.clone()));
            }
            return Ok(e);
        }
        Ok(base)
    }

    fn nat_atom(&mut self, params: &[String]) -> PResult<NatExpr> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(NatExpr::Const(n))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.nat_expr(params)?;
                self.expect(")")?;
                Ok(e)
            }
            Tok::Ident(name) if matches!(name.as_str(), "max" | "ceil" | "floor") && *self.peek2() == Tok::Sym("(") => {
                self.bump();
                self.bump();
                let a = self.nat_expr(params)?;
                let e = if name == "max" {
                    self.expect(",")?;
                    let b = self.nat_expr(params)?;
                    NatExpr::Max(Box::new(a), Box::new(b))
                } else {
                    self.expect("/")?;
                    let c = self.num()?;
                    if c == 0 {
                        return self.error("division by zero");
                    }
                    if name == "ceil" {
                        NatExpr::CeilDiv(Box::new(a), c)
                    } else {
                        NatExpr::FloorDiv(Box::new(a), c)
                    }
                };
                self.expect(")")?;
                Ok(e)
            }
            Tok::Ident(name) => match params.iter().position(|p| *p == name) {
                Some(i) => {
                    self.bump();
                    Ok(NatExpr::Var(i))
                }
                None => self.error(format!("unknown variable `{name}`")),
            },
            _ => self.expected("an arithmetic expression"),
        }
    }
}

pub fn parse_program(text: &str) -> PResult<ProgramAst> {
    let mut p = Parser::new(text)?;
    p.program()
}

/// Parses a standalone arithmetic expression over the named variables.
pub fn parse_nat_expr(text: &str, params: &[String]) -> PResult<NatExpr> {
    let mut p = Parser::new(text)?;
    let e = p.nat_expr(params)?;
    if !p.at_eof() {
        return p.expected("end of expression");
    }
    Ok(e)
}
