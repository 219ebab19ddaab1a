//! The expression language: posets such as `wedge(box(2,3), path(2))` and
//! orders such as `us(lex(x,y), id)`.
//!
//! [`parse_expression`] and [`parse_order`] produce syntax trees whose
//! `Display` output parses back to the same tree. [`Expr::build`] evaluates a
//! poset expression and keeps the intermediate results, which
//! [`OrderExpr::resolve`] needs to place union simplicial orders.

use std::fmt;
use std::path::Path;

use crate::construct::{
    adjoin_extreme, boxp, cartesian_product, diamond, disjoint_union, fiber_of_ideals,
    fiber_product, heart, named_y, named_yz, path, remove_extreme, spider, wedge, Extreme,
    OperationResult,
};
use crate::error::{Error, Result};
use crate::monomial::{default_vars, parse_factor, standard_monomial_poset, ExponentVector, MonomialIdeal};
use crate::order::{
    id_order, lex_order, order_from_lists, twist_order_with, union_simplicial_order_by,
    LevelOrderFamily,
};
use crate::poset::{PosetSpec, RankedPoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Path(usize),
    Box(Vec<u32>),
    Spider(Vec<usize>),
    Poset(MonomialIdeal),
    Heart([u32; 4]),
    Union(Vec<Expr>),
    Wedge(Vec<Expr>),
    Diamond(Vec<Expr>),
    Cart(Box<Expr>, Box<Expr>),
    /// `fiber(a, b)` glues two ideal quotients over their sum;
    /// `fiber(a, b, c, "file")` glues along `c` with the injections in `file`.
    Fiber {
        left: Box<Expr>,
        right: Box<Expr>,
        over: Option<(Box<Expr>, String)>,
    },
    Hat(Box<Expr>),
    Uhat(Box<Expr>),
    Bar(Box<Expr>),
    Ubar(Box<Expr>),
    Explicit(Explicit),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Explicit {
    /// `explicit{Y}` or `explicit{YZ}`.
    Named(String),
    /// `explicit{n; r0,...; a<b, ...}` where `a<b` means `b` covers `a`.
    Covers {
        ranks: Vec<usize>,
        covers: Vec<(usize, usize)>,
    },
}

pub const NAMED_POSETS: [&str; 2] = ["Y", "YZ"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderExpr {
    /// Element ids in level order.
    Id,
    Lex(Vec<String>),
    /// Twist order: elements whose `high` exponent is at least `threshold`
    /// come first in reversed lex, the rest follow in lex.
    Twist { high: String, threshold: u32 },
    /// Union simplicial order of per-factor orders. `precedence` lists the
    /// factors from the bottom block to the top one; by default later
    /// factors are on top.
    Us {
        precedence: Option<Vec<usize>>,
        parts: Vec<OrderExpr>,
    },
    /// Per-level lists read from a file.
    Lists(String),
}

/// An evaluated expression with the results of its subexpressions.
#[derive(Clone, Debug)]
pub struct Built {
    pub poset: RankedPoset,
    /// Set for union, wedge, diamond, fiber and cartesian nodes.
    pub op: Option<OperationResult>,
    pub children: Vec<Built>,
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Path(d) => write!(f, "path({d})"),
            Expr::Box(v) => write!(f, "box({})", join(v, ",")),
            Expr::Spider(v) => write!(f, "spider({})", join(v, ",")),
            Expr::Poset(i) => write!(f, "poset({})", i.to_expr()),
            Expr::Heart(v) => write!(f, "heart({})", join(v, ",")),
            Expr::Union(es) => write!(f, "union({})", join(es, ", ")),
            Expr::Wedge(es) => write!(f, "wedge({})", join(es, ", ")),
            Expr::Diamond(es) => write!(f, "diamond({})", join(es, ", ")),
            Expr::Cart(a, b) => write!(f, "cart({a}, {b})"),
            Expr::Fiber { left, right, over } => match over {
                None => write!(f, "fiber({left}, {right})"),
                Some((c, file)) => write!(f, "fiber({left}, {right}, {c}, {})", quote(file)),
            },
            Expr::Hat(e) => write!(f, "hat({e})"),
            Expr::Uhat(e) => write!(f, "uhat({e})"),
            Expr::Bar(e) => write!(f, "bar({e})"),
            Expr::Ubar(e) => write!(f, "ubar({e})"),
            Expr::Explicit(Explicit::Named(n)) => write!(f, "explicit{{{n}}}"),
            Expr::Explicit(Explicit::Covers { ranks, covers }) => {
                let cs: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                write!(f, "explicit{{{}; {}; {}}}", ranks.len(), join(ranks, ","), cs.join(", "))
            }
        }
    }
}

impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderExpr::Id => write!(f, "id"),
            OrderExpr::Lex(v) => write!(f, "lex({})", v.join(",")),
            OrderExpr::Twist { high, threshold } => write!(f, "twist({high},{threshold})"),
            OrderExpr::Us { precedence, parts } => {
                write!(f, "us")?;
                if let Some(p) = precedence {
                    write!(f, "[{}]", join(p, ","))?;
                }
                write!(f, "({})", join(parts, ", "))
            }
            OrderExpr::Lists(file) => write!(f, "lists({})", quote(file)),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn describe_here(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            let here = self.describe_here();
            Err(syntax(self.pos, format!("expected `{c}`, found {here}")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let t = self.rest();
        let len = t
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())))
            .map_or(t.len(), |(i, _)| i);
        if len == 0 {
            let here = self.describe_here();
            return Err(syntax(start, format!("expected a name, found {here}")));
        }
        self.pos += len;
        Ok((start, &t[..len]))
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T> {
        self.skip_ws();
        let start = self.pos;
        let t = self.rest();
        let len = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        if len == 0 {
            let here = self.describe_here();
            return Err(syntax(start, format!("expected a number, found {here}")));
        }
        self.pos += len;
        t[..len]
            .parse()
            .map_err(|_| syntax(start, format!("number `{}` out of range", &t[..len])))
    }

    fn string(&mut self) -> Result<String> {
        self.expect('"')?;
        let t = self.rest();
        let end = t
            .find('"')
            .ok_or_else(|| syntax(self.src.len(), "unterminated string"))?;
        self.pos += end + 1;
        Ok(t[..end].to_string())
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect('(')?;
        let mut out = vec![item(self)?];
        while self.eat(',') {
            out.push(item(self)?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn arity<T>(&self, name: &str, at: usize, v: &[T], ok: impl Fn(usize) -> bool, want: &str) -> Result<()> {
        if ok(v.len()) {
            Ok(())
        } else {
            Err(syntax(at, format!("`{name}` takes {want}, found {}", v.len())))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            let here = self.describe_here();
            return Err(syntax(self.pos, format!("unexpected {here} after the expression")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let (at, name) = self.ident()?;
        let boxed = |p: &mut Self| p.expr().map(Box::new);
        Ok(match name {
            "path" => {
                let v: Vec<usize> = self.list(|p| p.number())?;
                self.arity(name, at, &v, |n| n == 1, "one length")?;
                Expr::Path(v[0])
            }
            "box" => {
                let v: Vec<u32> = self.list(|p| p.number())?;
                if v.contains(&0) {
                    return Err(syntax(at, "box sides must be at least 1"));
                }
                Expr::Box(v)
            }
            "spider" => {
                let v: Vec<usize> = self.list(|p| p.number())?;
                if v.contains(&0) {
                    return Err(syntax(at, "spider legs must be at least 1"));
                }
                Expr::Spider(v)
            }
            "heart" => {
                let v: Vec<u32> = self.list(|p| p.number())?;
                self.arity(name, at, &v, |n| n == 4, "four sides")?;
                Expr::Heart([v[0], v[1], v[2], v[3]])
            }
            "poset" => {
                self.expect('(')?;
                let i = self.ideal()?;
                self.expect(')')?;
                Expr::Poset(i)
            }
            "union" | "wedge" | "diamond" => {
                let v = self.list(|p| p.expr())?;
                match name {
                    "union" => Expr::Union(v),
                    "wedge" => Expr::Wedge(v),
                    _ => Expr::Diamond(v),
                }
            }
            "cart" => {
                self.expect('(')?;
                let a = boxed(self)?;
                self.expect(',')?;
                let b = boxed(self)?;
                self.expect(')')?;
                Expr::Cart(a, b)
            }
            "fiber" => {
                self.expect('(')?;
                let left = boxed(self)?;
                self.expect(',')?;
                let right = boxed(self)?;
                let over = if self.eat(',') {
                    let c = boxed(self)?;
                    self.expect(',')?;
                    Some((c, self.string()?))
                } else {
                    None
                };
                self.expect(')')?;
                Expr::Fiber { left, right, over }
            }
            "hat" | "uhat" | "bar" | "ubar" => {
                self.expect('(')?;
                let e = boxed(self)?;
                self.expect(')')?;
                match name {
                    "hat" => Expr::Hat(e),
                    "uhat" => Expr::Uhat(e),
                    "bar" => Expr::Bar(e),
                    _ => Expr::Ubar(e),
                }
            }
            "explicit" => Expr::Explicit(self.explicit()?),
            _ => return Err(syntax(at, format!("unknown function `{name}`"))),
        })
    }

    fn explicit(&mut self) -> Result<Explicit> {
        self.expect('{')?;
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            let (at, name) = self.ident()?;
            if !NAMED_POSETS.contains(&name) {
                return Err(syntax(
                    at,
                    format!("unknown named poset `{name}`; known: {}", NAMED_POSETS.join(", ")),
                ));
            }
            self.expect('}')?;
            return Ok(Explicit::Named(name.into()));
        }
        self.skip_ws();
        let at = self.pos;
        let n: usize = self.number()?;
        self.expect(';')?;
        let mut ranks = Vec::new();
        if self.peek() != Some(';') {
            ranks.push(self.number()?);
            while self.eat(',') {
                ranks.push(self.number()?);
            }
        }
        if ranks.len() != n {
            return Err(syntax(at, format!("explicit poset declares {n} elements but lists {} ranks", ranks.len())));
        }
        self.expect(';')?;
        let mut covers = Vec::new();
        if self.peek() != Some('}') {
            loop {
                let a = self.number()?;
                self.expect('<')?;
                let b = self.number()?;
                covers.push((a, b));
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('}')?;
        Ok(Explicit::Covers { ranks, covers })
    }

    /// `ideal(...)` or `ideal[v1,...](...)`.
    fn ideal(&mut self) -> Result<MonomialIdeal> {
        let (at, name) = self.ident()?;
        if name != "ideal" {
            return Err(syntax(at, format!("expected `ideal`, found `{name}`")));
        }
        let declared = if self.eat('[') {
            let mut vars = vec![self.ident()?.1.to_string()];
            while self.eat(',') {
                vars.push(self.ident()?.1.to_string());
            }
            self.expect(']')?;
            Some(vars)
        } else {
            None
        };
        self.expect('(')?;
        let mut gens: Vec<(usize, &str)> = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let t = self.rest();
            let len = t.find([',', ')']).unwrap_or(t.len());
            if len == t.len() {
                return Err(syntax(self.src.len(), "expected `)`, found end of input"));
            }
            gens.push((start, t[..len].trim()));
            self.pos += len;
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        let vars = match declared {
            Some(v) => v,
            None => infer_vars(&gens)?,
        };
        let exps = gens
            .iter()
            .map(|&(pos, g)| {
                ExponentVector::parse(g, &vars).map_err(|e| match e {
                    Error::Syntax { msg, .. } => syntax(pos, msg),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::from_generators(vars, exps)
    }

    fn order(&mut self) -> Result<OrderExpr> {
        let (at, name) = self.ident()?;
        Ok(match name {
            "id" => OrderExpr::Id,
            "lex" => OrderExpr::Lex(self.list(|p| p.ident().map(|(_, s)| s.to_string()))?),
            "twist" => {
                self.expect('(')?;
                let high = self.ident()?.1.to_string();
                self.expect(',')?;
                let threshold = self.number()?;
                self.expect(')')?;
                OrderExpr::Twist { high, threshold }
            }
            "us" => {
                let precedence = if self.eat('[') {
                    let mut v = vec![self.number()?];
                    while self.eat(',') {
                        v.push(self.number()?);
                    }
                    self.expect(']')?;
                    Some(v)
                } else {
                    None
                };
                let parts = self.list(|p| p.order())?;
                if let Some(p) = &precedence {
                    self.arity("us", at, p, |n| n == parts.len(), "one precedence entry per factor")?;
                }
                OrderExpr::Us { precedence, parts }
            }
            "lists" => {
                self.expect('(')?;
                let file = self.string()?;
                self.expect(')')?;
                OrderExpr::Lists(file)
            }
            _ => return Err(syntax(at, format!("unknown order `{name}`"))),
        })
    }
}

/// The shortest default variable list containing every name used.
fn infer_vars(gens: &[(usize, &str)]) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for &(pos, g) in gens {
        if g == "1" {
            continue;
        }
        if g.is_empty() {
            return Err(syntax(pos, "empty generator"));
        }
        for factor in g.split('*') {
            let (name, _) = parse_factor(factor).map_err(|e| match e {
                Error::Syntax { msg, .. } => syntax(pos, msg),
                other => other,
            })?;
            names.push(name.to_string());
        }
    }
    (1..=64)
        .map(default_vars)
        .find(|vars| names.iter().all(|n| vars.contains(n)))
        .ok_or_else(|| {
            syntax(
                gens[0].0,
                "cannot infer the variables; declare them as ideal[v1,v2,...](...)",
            )
        })
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_order(text: &str) -> Result<OrderExpr> {
    let mut p = Parser::new(text);
    let o = p.order()?;
    p.finish()?;
    Ok(o)
}

fn read(file: &str) -> Result<String> {
    std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{file}: {e}")))
}

/// Non-empty, non-comment lines of whitespace-separated ids.
fn id_lines(file: &str) -> Result<Vec<Vec<usize>>> {
    read(file)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|w| {
                    w.parse().map_err(|_| Error::Format {
                        line: i + 1,
                        msg: format!("{file}: expected an element id, found `{w}`"),
                    })
                })
                .collect()
        })
        .collect()
}

impl Expr {
    pub fn build(&self) -> Result<Built> {
        let leaf = |poset| Built {
            poset,
            op: None,
            children: vec![],
        };
        let many = |es: &[Expr]| es.iter().map(Expr::build).collect::<Result<Vec<_>>>();
        let posets = |bs: &[Built]| bs.iter().map(|b| b.poset.clone()).collect::<Vec<_>>();
        let with_op = |op: OperationResult, children| Built {
            poset: op.poset.clone(),
            op: Some(op),
            children,
        };
        let one = |e: &Expr, f: &dyn Fn(&RankedPoset) -> Result<RankedPoset>| -> Result<Built> {
            let c = e.build()?;
            Ok(Built {
                poset: f(&c.poset)?,
                op: None,
                children: vec![c],
            })
        };
        Ok(match self {
            Expr::Path(d) => leaf(path(*d)),
            Expr::Box(v) => leaf(boxp(v)),
            Expr::Spider(v) => {
                let op = spider(v)?;
                let children = v.iter().map(|&l| leaf(path(l))).collect();
                with_op(op, children)
            }
            Expr::Poset(i) => leaf(standard_monomial_poset(i)?),
            Expr::Heart([a0, a1, b0, b1]) => leaf(heart(*a0, *a1, *b0, *b1)?),
            Expr::Union(es) => {
                let cs = many(es)?;
                with_op(disjoint_union(&posets(&cs)), cs)
            }
            Expr::Wedge(es) => {
                let cs = many(es)?;
                with_op(wedge(&posets(&cs))?, cs)
            }
            Expr::Diamond(es) => {
                let cs = many(es)?;
                with_op(diamond(&posets(&cs))?, cs)
            }
            Expr::Cart(a, b) => {
                let cs = vec![a.build()?, b.build()?];
                with_op(cartesian_product(&cs[0].poset, &cs[1].poset), cs)
            }
            Expr::Fiber { left, right, over } => {
                let cs = vec![left.build()?, right.build()?];
                let op = match over {
                    None => match (left.as_ref(), right.as_ref()) {
                        (Expr::Poset(i), Expr::Poset(j)) => fiber_of_ideals(i, j)?,
                        _ => {
                            return Err(Error::Precondition {
                                op: "fiber",
                                reason: "without a common subposet both sides must be poset(ideal(...))".into(),
                            })
                        }
                    },
                    Some((c, file)) => {
                        let pc = c.build()?.poset;
                        let maps = id_lines(file)?;
                        if maps.len() != 2 {
                            return Err(Error::Format {
                                line: 0,
                                msg: format!("{file}: expected two lines of ids, found {}", maps.len()),
                            });
                        }
                        fiber_product(&cs[0].poset, &cs[1].poset, &pc, &maps[0], &maps[1])?
                    }
                };
                with_op(op, cs)
            }
            Expr::Hat(e) => one(e, &|p| adjoin_extreme(p, Extreme::Top))?,
            Expr::Uhat(e) => one(e, &|p| adjoin_extreme(p, Extreme::Bottom))?,
            Expr::Bar(e) => one(e, &|p| remove_extreme(p, Extreme::Top))?,
            Expr::Ubar(e) => one(e, &|p| remove_extreme(p, Extreme::Bottom))?,
            Expr::Explicit(Explicit::Named(n)) => leaf(match n.as_str() {
                "Y" => named_y(),
                "YZ" => named_yz(),
                _ => return Err(syntax(0, format!("unknown named poset `{n}`"))),
            }),
            Expr::Explicit(Explicit::Covers { ranks, covers }) => leaf(RankedPoset::from_spec(PosetSpec {
                name: self.to_string(),
                ranks: ranks.clone(),
                covers: covers.clone(),
                labels: None,
            })?),
        })
    }
}

impl OrderExpr {
    /// Builds the order on `b`. `us(...)` needs `b` to come from a union,
    /// wedge, diamond, fiber, cartesian or spider node with one part per
    /// factor.
    pub fn resolve(&self, b: &Built) -> Result<LevelOrderFamily> {
        let p = &b.poset;
        match self {
            OrderExpr::Id => Ok(id_order(p)),
            OrderExpr::Lex(v) => lex_order(p, v),
            OrderExpr::Twist { high, threshold } => {
                let vars = p
                    .labels()
                    .map(|l| l.vars.clone())
                    .ok_or_else(|| Error::InvalidOrder("twist needs exponent labels".into()))?;
                let h = vars
                    .iter()
                    .position(|v| v == high)
                    .ok_or_else(|| Error::InvalidOrder(format!("unknown variable `{high}`")))?;
                twist_order_with(p, h, *threshold)
            }
            OrderExpr::Us { precedence, parts } => {
                let op = b.op.as_ref().ok_or_else(|| {
                    Error::InvalidOrder("us(...) needs a union, wedge, diamond or product node".into())
                })?;
                if parts.len() != b.children.len() {
                    return Err(Error::ArityMismatch {
                        expected: b.children.len(),
                        found: parts.len(),
                    });
                }
                let orders = parts
                    .iter()
                    .zip(&b.children)
                    .map(|(o, c)| o.resolve(c))
                    .collect::<Result<Vec<_>>>()?;
                let prec = precedence.clone().unwrap_or_else(|| (0..parts.len()).collect());
                union_simplicial_order_by(p, &op.provenance, &orders, &prec)
            }
            OrderExpr::Lists(file) => order_from_lists(p, id_lines(file)?),
        }
    }
}

/// Parses and builds a poset expression.
pub fn build(text: &str) -> Result<Built> {
    parse_expression(text)?.build()
}

/// Parses an order expression and resolves it against `b`.
pub fn resolve_order(text: &str, b: &Built) -> Result<LevelOrderFamily> {
    parse_order(text)?.resolve(b)
}

/// Reads a poset expression or, when `arg` names an existing file ending in
/// `.poset`, a poset file.
pub fn load(arg: &str) -> Result<Built> {
    if arg.ends_with(".poset") && Path::new(arg).exists() {
        let poset = crate::format::read_poset_file(arg)?;
        return Ok(Built {
            poset,
            op: None,
            children: vec![],
        });
    }
    build(arg)
}
