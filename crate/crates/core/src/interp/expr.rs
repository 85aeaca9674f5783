//! Monotone expressions over natural numbers and their polynomial normal
//! form.
//!
//! Every construct in [`NatExpr`] is monotone, so any expression denotes a
//! monotone map. [`Poly`] gives sums of monomials with natural coefficients;
//! rounding and `max` survive as opaque atoms, except that
//! `ceil(p/2) + floor(p/2)` collapses back to `p`.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NatExpr {
    Var(usize),
    Const(u64),
    Add(Box<NatExpr>, Box<NatExpr>),
    Mul(Box<NatExpr>, Box<NatExpr>),
    Max(Box<NatExpr>, Box<NatExpr>),
    /// `ceil(e / c)`, `c >= 1`
    CeilDiv(Box<NatExpr>, u64),
    /// `floor(e / c)`, `c >= 1`
    FloorDiv(Box<NatExpr>, u64),
}

const NAMES: [&str; 6] = ["x", "y", "z", "w", "v", "u"];

/// Default printed name of the `i`-th variable.
pub fn var_name(i: usize) -> String {
    NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{}", i + 1))
}

impl NatExpr {
    pub fn var(i: usize) -> Self {
        NatExpr::Var(i)
    }

    pub fn constant(c: u64) -> Self {
        NatExpr::Const(c)
    }

    pub fn add(a: NatExpr, b: NatExpr) -> Self {
        match (&a, &b) {
            (NatExpr::Const(0), _) => b,
            (_, NatExpr::Const(0)) => a,
            _ => NatExpr::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn mul(a: NatExpr, b: NatExpr) -> Self {
        match (&a, &b) {
            (NatExpr::Const(1), _) => b,
            (_, NatExpr::Const(1)) => a,
            _ => NatExpr::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn max(a: NatExpr, b: NatExpr) -> Self {
        NatExpr::Max(Box::new(a), Box::new(b))
    }

    pub fn ceil_div(a: NatExpr, c: u64) -> Self {
        NatExpr::CeilDiv(Box::new(a), c.max(1))
    }

    pub fn floor_div(a: NatExpr, c: u64) -> Self {
        NatExpr::FloorDiv(Box::new(a), c.max(1))
    }

    pub fn pow(a: NatExpr, n: u32) -> Self {
        (1..n).fold(if n == 0 { NatExpr::Const(1) } else { a.clone() }, |acc, _| {
            NatExpr::mul(acc, a.clone())
        })
    }

    pub fn sum<I: IntoIterator<Item = NatExpr>>(items: I) -> Self {
        items.into_iter().fold(NatExpr::Const(0), NatExpr::add)
    }

    /// Saturating evaluation.
    pub fn eval(&self, xs: &[u64]) -> u64 {
        match self {
            NatExpr::Var(i) => xs.get(*i).copied().unwrap_or(0),
            NatExpr::Const(c) => *c,
            NatExpr::Add(a, b) => a.eval(xs).saturating_add(b.eval(xs)),
            NatExpr::Mul(a, b) => a.eval(xs).saturating_mul(b.eval(xs)),
            NatExpr::Max(a, b) => a.eval(xs).max(b.eval(xs)),
            NatExpr::CeilDiv(a, c) => a.eval(xs).div_ceil(*c),
            NatExpr::FloorDiv(a, c) => a.eval(xs) / c,
        }
    }

    /// Replaces `Var(i)` by `args[i]`.
    pub fn substitute(&self, args: &[NatExpr]) -> NatExpr {
        match self {
            NatExpr::Var(i) => args.get(*i).cloned().unwrap_or(NatExpr::Const(0)),
            NatExpr::Const(c) => NatExpr::Const(*c),
            NatExpr::Add(a, b) => NatExpr::add(a.substitute(args), b.substitute(args)),
            NatExpr::Mul(a, b) => NatExpr::mul(a.substitute(args), b.substitute(args)),
            NatExpr::Max(a, b) => NatExpr::max(a.substitute(args), b.substitute(args)),
            NatExpr::CeilDiv(a, c) => NatExpr::ceil_div(a.substitute(args), *c),
            NatExpr::FloorDiv(a, c) => NatExpr::floor_div(a.substitute(args), *c),
        }
    }

    /// One more than the largest variable index, or 0.
    pub fn arity(&self) -> usize {
        match self {
            NatExpr::Var(i) => i + 1,
            NatExpr::Const(_) => 0,
            NatExpr::Add(a, b) | NatExpr::Mul(a, b) | NatExpr::Max(a, b) => a.arity().max(b.arity()),
            NatExpr::CeilDiv(a, _) | NatExpr::FloorDiv(a, _) => a.arity(),
        }
    }

    pub fn normalize(&self) -> Poly {
        Poly::from_expr(self)
    }

    /// Prints with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        ExprDisplay { e: self, names, prec: 0 }
    }
}

struct ExprDisplay<'a> {
    e: &'a NatExpr,
    names: &'a [String],
    prec: u8,
}

/// `Mul(Mul(e, e), e)` and similar left-nested chains print as `e^n`.
fn power_chain(e: &NatExpr) -> Option<(&NatExpr, u32)> {
    let NatExpr::Mul(l, r) = e else { return None };
    if l == r {
        return Some((r, 2));
    }
    match power_chain(l) {
        Some((base, n)) if base == &**r => Some((base, n + 1)),
        _ => None,
    }
}

impl fmt::Display for ExprDisplay<'_> {
    // Binding strength: 1 sums, 2 products, 3 powers, 4 atoms. Right
    // operands print one level tighter so reparsing rebuilds the same
    // left-nested tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e, prec| ExprDisplay { e, names: self.names, prec };
        match self.e {
            NatExpr::Var(i) => match self.names.get(*i) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "{}", var_name(*i)),
            },
            NatExpr::Const(c) => write!(f, "{c}"),
            NatExpr::Add(a, b) => {
                if self.prec > 1 {
                    write!(f, "({} + {})", sub(a, 1), sub(b, 2))
                } else {
                    write!(f, "{} + {}", sub(a, 1), sub(b, 2))
                }
            }
            NatExpr::Mul(a, b) => {
                if let Some((base, n)) = power_chain(self.e) {
                    return if self.prec > 3 {
                        write!(f, "({}^{n})", sub(base, 4))
                    } else {
                        write!(f, "{}^{n}", sub(base, 4))
                    };
                }
                if self.prec > 2 {
                    write!(f, "({}*{})", sub(a, 2), sub(b, 3))
                } else {
                    write!(f, "{}*{}", sub(a, 2), sub(b, 3))
                }
            }
            NatExpr::Max(a, b) => write!(f, "max({}, {})", sub(a, 0), sub(b, 0)),
            NatExpr::CeilDiv(a, c) => write!(f, "ceil({}/{c})", sub(a, 0)),
            NatExpr::FloorDiv(a, c) => write!(f, "floor({}/{c})", sub(a, 0)),
        }
    }
}

impl fmt::Display for NatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(usize),
    Ceil(Poly, u64),
    Floor(Poly, u64),
    Max(Poly, Poly),
}

/// Product of atoms with exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub BTreeMap<Atom, u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (a, e) in &other.0 {
            *m.entry(a.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }
}

/// Sum of monomials with positive natural coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(pub BTreeMap<Monomial, u64>);

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: u64) -> Poly {
        let mut p = Poly::default();
        if c > 0 {
            p.0.insert(Monomial::default(), c);
        }
        p
    }

    pub fn atom(a: Atom) -> Poly {
        let mut m = BTreeMap::new();
        m.insert(a, 1);
        let mut p = Poly::default();
        p.0.insert(Monomial(m), 1);
        p
    }

    pub fn var(i: usize) -> Poly {
        Poly::atom(Atom::Var(i))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_constant(&self) -> Option<u64> {
        match self.0.len() {
            0 => Some(0),
            1 => self.0.get(&Monomial::default()).copied(),
            _ => None,
        }
    }

    /// True when only variables occur, i.e. the value lies in ℕ[x₁,…,xₘ].
    pub fn is_polynomial(&self) -> bool {
        self.0.keys().all(|m| m.0.keys().all(|a| matches!(a, Atom::Var(_))))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.0 {
            *p.0.entry(m.clone()).or_insert(0) += c;
        }
        p.simplify()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                *p.0.entry(m1.mul(m2)).or_insert(0) += c1.saturating_mul(*c2);
            }
        }
        p.simplify()
    }

    pub fn from_expr(e: &NatExpr) -> Poly {
        match e {
            NatExpr::Var(i) => Poly::var(*i),
            NatExpr::Const(c) => Poly::constant(*c),
            NatExpr::Add(a, b) => Poly::from_expr(a).add(&Poly::from_expr(b)),
            NatExpr::Mul(a, b) => Poly::from_expr(a).mul(&Poly::from_expr(b)),
            NatExpr::Max(a, b) => {
                let (pa, pb) = (Poly::from_expr(a), Poly::from_expr(b));
                if pa == pb {
                    return pa;
                }
                match (pa.as_constant(), pb.as_constant()) {
                    (Some(x), Some(y)) => Poly::constant(x.max(y)),
                    _ => {
                        let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
                        Poly::atom(Atom::Max(lo, hi))
                    }
                }
            }
            NatExpr::CeilDiv(a, c) => Poly::rounded(Poly::from_expr(a), *c, true),
            NatExpr::FloorDiv(a, c) => Poly::rounded(Poly::from_expr(a), *c, false),
        }
    }

    fn rounded(p: Poly, c: u64, ceil: bool) -> Poly {
        if c <= 1 {
            return p;
        }
        if let Some(k) = p.as_constant() {
            return Poly::constant(if ceil { k.div_ceil(c) } else { k / c });
        }
        Poly::atom(if ceil { Atom::Ceil(p, c) } else { Atom::Floor(p, c) })
    }

    /// `ceil(p/2)·m + floor(p/2)·m = p·m`, applied until no pair is left.
    fn simplify(mut self) -> Poly {
        loop {
            let mut found = None;
            'outer: for m in self.0.keys() {
                for (a, e) in &m.0 {
                    if let (Atom::Ceil(p, 2), 1) = (a, *e) {
                        let mut rest = m.0.clone();
                        rest.remove(a);
                        let mut partner = rest.clone();
                        partner.insert(Atom::Floor(p.clone(), 2), 1);
                        let partner = Monomial(partner);
                        if self.0.contains_key(&partner) {
                            found = Some((m.clone(), partner, Monomial(rest), p.clone()));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((m, partner, rest, p)) = found else { return self };
            let c = self.0[&m].min(self.0[&partner]);
            for key in [&m, &partner] {
                let v = self.0.get_mut(key).expect("present");
                *v -= c;
                if *v == 0 {
                    self.0.remove(key);
                }
            }
            let mut rest_poly = Poly::default();
            rest_poly.0.insert(rest, c);
            let extra = rest_poly.mul(&p);
            for (mm, cc) in extra.0 {
                *self.0.entry(mm).or_insert(0) += cc;
            }
        }
    }

    /// Back to an expression, monomials in display order.
    pub fn to_expr(&self) -> NatExpr {
        let mut terms: Vec<(&Monomial, &u64)> = self.0.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| graded_lex(a.0, b.0)));
        let atom = |a: &Atom| match a {
            Atom::Var(i) => NatExpr::Var(*i),
            Atom::Ceil(p, c) => NatExpr::CeilDiv(Box::new(p.to_expr()), *c),
            Atom::Floor(p, c) => NatExpr::FloorDiv(Box::new(p.to_expr()), *c),
            Atom::Max(p, q) => NatExpr::Max(Box::new(p.to_expr()), Box::new(q.to_expr())),
        };
        let mut out: Option<NatExpr> = None;
        for (m, c) in terms {
            let mut factors: Vec<NatExpr> = Vec::new();
            if *c != 1 || m.0.is_empty() {
                factors.push(NatExpr::Const(*c));
            }
            for (a, e) in &m.0 {
                let base = atom(a);
                let mut pw = base.clone();
                for _ in 1..*e {
                    pw = NatExpr::Mul(Box::new(pw), Box::new(base.clone()));
                }
                factors.push(pw);
            }
            let term = factors
                .into_iter()
                .reduce(|x, y| NatExpr::Mul(Box::new(x), Box::new(y)))
                .expect("at least one factor");
            out = Some(match out {
                None => term,
                Some(acc) => NatExpr::Add(Box::new(acc), Box::new(term)),
            });
        }
        out.unwrap_or(NatExpr::Const(0))
    }

    pub fn eval(&self, xs: &[u64]) -> u64 {
        self.0
            .iter()
            .map(|(m, c)| {
                m.0.iter().fold(*c, |acc, (a, e)| {
                    let v = match a {
                        Atom::Var(i) => xs.get(*i).copied().unwrap_or(0),
                        Atom::Ceil(p, k) => p.eval(xs).div_ceil(*k),
                        Atom::Floor(p, k) => p.eval(xs) / k,
                        Atom::Max(p, q) => p.eval(xs).max(q.eval(xs)),
                    };
                    acc.saturating_mul(v.saturating_pow(*e))
                })
            })
            .fold(0u64, u64::saturating_add)
    }
}

/// Higher exponent on the earlier atom first, so `x^2` precedes `x*y`.
fn graded_lex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let atoms: std::collections::BTreeSet<&Atom> = a.0.keys().chain(b.0.keys()).collect();
    for atom in atoms {
        let (ea, eb) = (a.0.get(atom).copied().unwrap_or(0), b.0.get(atom).copied().unwrap_or(0));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    std::cmp::Ordering::Equal
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(i) => write!(f, "{}", var_name(*i)),
            Atom::Ceil(p, c) => write!(f, "ceil(({p})/{c})"),
            Atom::Floor(p, c) => write!(f, "floor(({p})/{c})"),
            Atom::Max(p, q) => write!(f, "max({p}, {q})"),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &u64)> = self.0.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| graded_lex(a.0, b.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if *c != 1 || m.0.is_empty() {
                parts.push(c.to_string());
            }
            for (a, e) in &m.0 {
                if *e == 1 {
                    parts.push(a.to_string());
                } else {
                    parts.push(format!("{a}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> NatExpr {
        NatExpr::var(0)
    }
    fn y() -> NatExpr {
        NatExpr::var(1)
    }

    #[test]
    fn eval_rounding() {
        let e = NatExpr::add(NatExpr::ceil_div(x(), 2), NatExpr::floor_div(x(), 2));
        for i in 0..20 {
            assert_eq!(e.eval(&[i]), i);
        }
        assert_eq!(NatExpr::ceil_div(x(), 2).eval(&[7]), 4);
        assert_eq!(NatExpr::floor_div(x(), 2).eval(&[7]), 3);
    }

    #[test]
    fn normal_forms() {
        let sq = NatExpr::pow(NatExpr::add(x(), y()), 2);
        assert_eq!(sq.normalize().to_string(), "x^2 + 2*x*y + y^2");
        let split_sum = NatExpr::add(NatExpr::ceil_div(x(), 2), NatExpr::floor_div(x(), 2));
        assert_eq!(split_sum.normalize(), Poly::var(0));
        assert!(split_sum.normalize().is_polynomial());
        let two_x_sq = NatExpr::mul(NatExpr::constant(2), NatExpr::mul(x(), x()));
        assert_eq!(two_x_sq.normalize().to_string(), "2*x^2");
        assert!(!NatExpr::ceil_div(x(), 2).normalize().is_polynomial());
        assert_eq!(NatExpr::ceil_div(NatExpr::constant(7), 2).normalize(), Poly::constant(4));
    }

    #[test]
    fn substitution_commutes_with_eval() {
        let e = NatExpr::mul(NatExpr::add(x(), NatExpr::constant(1)), y());
        let s = e.substitute(&[NatExpr::mul(NatExpr::constant(3), x()), y()]);
        assert_eq!(s.eval(&[2, 5]), e.eval(&[6, 5]));
        assert_eq!(s.normalize().eval(&[2, 5]), s.eval(&[2, 5]));
    }
}
