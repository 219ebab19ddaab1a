//! The commands behind the command-line front end. Each returns a
//! [`Report`] (the JSON document written by `--report`) together with the
//! human-readable text printed to standard output.
//!
//! Reports hold exact integers only. The `timings` block records work
//! counters from the order search rather than wall-clock time, so the same
//! command produces the same bytes on every run and thread count.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{
    conjecture_6_7_search, verify_family, Conj67Spec, Family, FamilySpec, GridReport, GridRow, Status,
};
use crate::error::{Error, Result};
use crate::expr::{load, parse_order, Built};
use crate::macaulay::{
    check_macaulay, find_macaulay_order, is_additive, min_shadow_table, SearchOptions, SearchOutcome,
    SearchStats,
};
use crate::order::LevelOrderFamily;
use crate::poset::{lower_shadow, upper_shadow, LevelSubset, RankedPoset};
use crate::verdict::Verdict;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// How a command ended, which fixes the process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Property holds, order found, or every row agrees: exit 0.
    Ok,
    /// A violation, a missing order or a disagreement: exit 1.
    Negative,
    /// The search budget ran out before an answer: exit 3.
    Budget,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Negative => 1,
            Outcome::Budget => 3,
        }
    }
}

/// Exit status for input and usage errors.
pub const EXIT_USAGE: i32 = 2;

/// Search work summed over every search a command ran.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub searches: u64,
    pub nodes: u64,
    pub partitions: u64,
    pub memo_hits: u64,
    pub branches: u64,
}

impl Timings {
    pub fn add(&mut self, s: &SearchStats) {
        self.searches += 1;
        self.nodes += s.nodes;
        self.partitions += s.partitions;
        self.memo_hits += s.memo_hits;
        self.branches += s.branches;
    }

    fn from_rows(rows: &[GridRow]) -> Self {
        let mut t = Timings::default();
        for r in rows {
            t.add(&r.stats);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub verdict: String,
    pub outcome: Outcome,
    pub witness: Option<Value>,
    pub rows: Vec<Value>,
    pub timings: Timings,
    pub version: String,
}

impl Report {
    fn new(command: &str, input: Value) -> Self {
        Report {
            command: command.into(),
            input,
            verdict: String::new(),
            outcome: Outcome::Ok,
            witness: None,
            rows: vec![],
            timings: Timings::default(),
            version: VERSION.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// A finished command: the report and the text for standard output.
#[derive(Clone, Debug)]
pub struct Finished {
    pub report: Report,
    pub text: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn lists(o: &LevelOrderFamily) -> String {
    o.levels()
        .iter()
        .enumerate()
        .map(|(d, l)| {
            let ids: Vec<String> = l.iter().map(usize::to_string).collect();
            format!("  level {d}: {}\n", ids.join(" "))
        })
        .collect()
}

fn describe_elements(p: &RankedPoset, ids: &[usize]) -> String {
    let one = |e: usize| match (p.labels(), p.label(e)) {
        (Some(l), Some(x)) => format!("{e}={}", x.display(&l.vars)),
        _ => e.to_string(),
    };
    ids.iter().map(|&e| one(e)).collect::<Vec<_>>().join(" ")
}

/// Builds a poset and renders it in the `macposet 1` format.
pub fn cmd_build(expr: &str) -> Result<Finished> {
    let b = load(expr)?;
    let mut r = Report::new("build", json!({ "expression": expr }));
    r.verdict = "built".into();
    r.rows = vec![json!({ "elements": b.poset.len(), "level_sizes": b.poset.level_sizes() })];
    let text = match &b.op {
        Some(op) => crate::format::serialize_operation(op),
        None => crate::format::serialize_poset(&b.poset),
    };
    Ok(Finished { report: r, text })
}

/// Levels, level sizes and covers; with `dot`, a DOT edge list instead.
pub fn cmd_show(expr: &str, dot: bool) -> Result<Finished> {
    let b = load(expr)?;
    let p = &b.poset;
    let mut r = Report::new("show", json!({ "expression": expr }));
    r.verdict = "shown".into();
    r.rows = (0..p.num_levels())
        .map(|d| json!({ "level": d, "elements": p.level(d) }))
        .collect();
    let mut text = String::new();
    if dot {
        let _ = writeln!(text, "digraph poset {{");
        for (a, c) in p.covers() {
            let _ = writeln!(text, "  {a} -> {c};");
        }
        let _ = writeln!(text, "}}");
    } else {
        let _ = writeln!(text, "{}: {} elements, level sizes {:?}", p.name(), p.len(), p.level_sizes());
        for d in 0..p.num_levels() {
            let _ = writeln!(text, "  level {d}: {}", describe_elements(p, p.level(d)));
        }
        let covers: Vec<String> = p.covers().map(|(a, c)| format!("{a}<{c}")).collect();
        let _ = writeln!(text, "covers: {}", covers.join(" "));
    }
    Ok(Finished { report: r, text })
}

fn parse_ids(set: &str) -> Result<Vec<usize>> {
    set.split([',', ' '])
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.trim().parse().map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("expected an element id, found `{w}`"),
            })
        })
        .collect()
}

/// Upper and lower shadows of a set of same-rank elements.
pub fn cmd_shadow(expr: &str, set: &str) -> Result<Finished> {
    let b = load(expr)?;
    let p = &b.poset;
    let ids = parse_ids(set)?;
    if ids.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "--set needs at least one element".into(),
        });
    }
    if let Some(&e) = ids.iter().find(|&&e| e >= p.len()) {
        return Err(Error::InvalidPoset(format!("element {e} is not in a poset of {} elements", p.len())));
    }
    let s = LevelSubset::from_elements(p, p.rank(ids[0]), &ids)?;
    let up = upper_shadow(p, &s).elements(p);
    let down = lower_shadow(p, &s).elements(p);
    let mut r = Report::new("shadow", json!({ "expression": expr, "set": ids }));
    r.verdict = "computed".into();
    r.rows = vec![json!({ "upper": up, "lower": down })];
    let text = format!(
        "set: {}\nupper shadow ({}): {}\nlower shadow ({}): {}\n",
        describe_elements(p, &ids),
        up.len(),
        describe_elements(p, &up),
        down.len(),
        describe_elements(p, &down)
    );
    Ok(Finished { report: r, text })
}

fn resolve(b: &Built, order: &str) -> Result<LevelOrderFamily> {
    parse_order(order)?.resolve(b)
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Ok => "ok".into(),
        Verdict::Violation(w) => format!("violation: {}", serde_json::to_string(w).unwrap_or_default()),
    }
}

/// Checks both Macaulay conditions for the given order.
pub fn cmd_check(expr: &str, order: &str) -> Result<Finished> {
    let b = load(expr)?;
    let o = resolve(&b, order)?;
    let v = check_macaulay(&b.poset, &o)?;
    let mut r = Report::new("check", json!({ "expression": expr, "order": order }));
    r.verdict = if v.is_ok() { "ok" } else { "violation" }.into();
    r.outcome = if v.is_ok() { Outcome::Ok } else { Outcome::Negative };
    r.witness = v.witness().map(to_value);
    let text = format!("{expr} with {order}: {}\n", verdict_text(&v));
    Ok(Finished { report: r, text })
}

fn search_verdict(o: &SearchOutcome) -> (&'static str, Outcome) {
    match o {
        SearchOutcome::Found(_) => ("order found", Outcome::Ok),
        SearchOutcome::NoOrder => ("no Macaulay order", Outcome::Negative),
        SearchOutcome::BudgetExceeded => ("budget exceeded", Outcome::Budget),
    }
}

/// Searches for a Macaulay order.
pub fn cmd_search(expr: &str, opts: &SearchOptions) -> Result<Finished> {
    let b = load(expr)?;
    let rep = find_macaulay_order(&b.poset, opts)?;
    let mut r = Report::new(
        "search-order",
        json!({ "expression": expr, "budget": opts.budget, "level_cap": opts.level_cap }),
    );
    let (v, outcome) = search_verdict(&rep.outcome);
    r.verdict = v.into();
    r.outcome = outcome;
    r.timings.add(&rep.stats);
    let mut text = format!("{expr}: {v}\n");
    if let Some(o) = rep.outcome.order() {
        r.rows = o
            .levels()
            .iter()
            .enumerate()
            .map(|(d, l)| json!({ "level": d, "order": l }))
            .collect();
        text.push_str(&lists(o));
    }
    Ok(Finished { report: r, text })
}

/// Additivity of a Macaulay order. An order that is not Macaulay is a
/// negative result with the Macaulay witness attached.
pub fn cmd_additive(expr: &str, order: &str) -> Result<Finished> {
    let b = load(expr)?;
    let o = resolve(&b, order)?;
    let mut r = Report::new("additive", json!({ "expression": expr, "order": order }));
    let mac = check_macaulay(&b.poset, &o)?;
    let v = if mac.is_ok() {
        let v = is_additive(&b.poset, &o)?;
        r.verdict = if v.is_ok() { "additive" } else { "not additive" }.into();
        v
    } else {
        r.verdict = "order is not Macaulay".into();
        mac
    };
    r.outcome = if v.is_ok() { Outcome::Ok } else { Outcome::Negative };
    r.witness = v.witness().map(to_value);
    let text = format!("{expr} with {order}: {}\n", r.verdict)
        + &v.witness().map(|w| format!("  {}\n", serde_json::to_string(w).unwrap_or_default())).unwrap_or_default();
    Ok(Finished { report: r, text })
}

/// The minimum-shadow table, the right-hand side of the first Macaulay
/// condition.
pub fn cmd_table(expr: &str, level_cap: usize) -> Result<Finished> {
    let b = load(expr)?;
    let t = min_shadow_table(&b.poset, level_cap)?;
    let mut r = Report::new("table", json!({ "expression": expr }));
    r.verdict = "computed".into();
    let mut text = String::new();
    for (d, l) in t.levels.iter().enumerate() {
        r.rows.push(json!({ "level": d, "min_shadow": l.min }));
        let _ = writeln!(text, "level {d}: {:?}", l.min);
    }
    Ok(Finished { report: r, text })
}

fn grid_outcome(g: &GridReport) -> Outcome {
    if !g.disagreements.is_empty() || !g.order_failures.is_empty() {
        Outcome::Negative
    } else if !g.inconclusive.is_empty() {
        Outcome::Budget
    } else {
        Outcome::Ok
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Found => "found",
        Status::None => "none",
        Status::Budget => "budget",
    }
}

fn grid_text(g: &GridReport) -> String {
    let mut text = String::new();
    for row in &g.rows {
        let pred = match row.predicate {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let mark = match row.agrees {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "",
        };
        let _ = write!(text, "{:<58} n={:<3} predicted {:<3} search {:<6} {mark}", row.instance, row.elements, pred, status_text(row.search));
        if let Some(c) = &row.recommended {
            let _ = write!(text, "  {} {}", c.order, if c.ok { "ok" } else { "FAILS" });
        }
        if let Some(n) = &row.note {
            let _ = write!(text, "  ({n})");
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "{}: {} rows, {} disagreements, {} inconclusive, {} order failures",
        g.family,
        g.rows.len(),
        g.disagreements.len(),
        g.inconclusive.len(),
        g.order_failures.len()
    );
    for d in &g.disagreements {
        let _ = writeln!(text, "  disagreement: {d}");
    }
    for d in &g.order_failures {
        let _ = writeln!(text, "  recommended order fails: {d}");
    }
    text
}

fn grid_report(command: &str, input: Value, grids: &[GridReport]) -> Finished {
    let mut r = Report::new(command, input);
    let mut text = String::new();
    let mut outcome = Outcome::Ok;
    let mut summary = serde_json::Map::new();
    for g in grids {
        r.rows.extend(g.rows.iter().map(to_value));
        let t = Timings::from_rows(&g.rows);
        r.timings.searches += t.searches;
        r.timings.nodes += t.nodes;
        r.timings.partitions += t.partitions;
        r.timings.memo_hits += t.memo_hits;
        r.timings.branches += t.branches;
        let o = grid_outcome(g);
        outcome = match (outcome, o) {
            (Outcome::Negative, _) | (_, Outcome::Negative) => Outcome::Negative,
            (Outcome::Budget, _) | (_, Outcome::Budget) => Outcome::Budget,
            _ => Outcome::Ok,
        };
        summary.insert(
            g.family.clone(),
            json!({
                "disagreements": g.disagreements,
                "inconclusive": g.inconclusive,
                "order_failures": g.order_failures,
            }),
        );
        text.push_str(&grid_text(g));
    }
    r.outcome = outcome;
    r.verdict = match outcome {
        Outcome::Ok => "all rows agree",
        Outcome::Negative => "disagreement found",
        Outcome::Budget => "inconclusive",
    }
    .into();
    if outcome != Outcome::Ok {
        r.witness = Some(Value::Object(summary));
    }
    Finished { report: r, text }
}

/// Bounds for `verify-family`, overriding the standard grid where given.
#[derive(Clone, Debug, Default)]
pub struct GridBounds {
    pub lo: Option<u32>,
    pub hi: Option<u32>,
}

pub fn family_with_bounds(name: &str, bounds: &GridBounds) -> Result<Family> {
    let fam = Family::standard(name).ok_or_else(|| Error::Syntax {
        pos: 0,
        msg: format!("unknown family `{name}`; known: {}", Family::NAMES.join(", ")),
    })?;
    Ok(match fam {
        Family::Heart { lo, hi } => Family::Heart {
            lo: bounds.lo.unwrap_or(lo),
            hi: bounds.hi.unwrap_or(hi),
        },
        Family::WedgeBox2d { lo, hi } => Family::WedgeBox2d {
            lo: bounds.lo.unwrap_or(lo),
            hi: bounds.hi.unwrap_or(hi),
        },
        Family::DiamondBox {
            lo,
            hi,
            max_dims,
            max_elements,
        } => Family::DiamondBox {
            lo: bounds.lo.unwrap_or(lo),
            hi: bounds.hi.unwrap_or(hi),
            max_dims,
            max_elements,
        },
        Family::WedgePathBox { max_n, max_m, max_n2 } => Family::WedgePathBox {
            max_n: bounds.hi.unwrap_or(max_n),
            max_m,
            max_n2: bounds.hi.unwrap_or(max_n2),
        },
        other => other,
    })
}

pub fn cmd_verify_family(name: &str, bounds: &GridBounds, opts: &SearchOptions) -> Result<Finished> {
    let family = family_with_bounds(name, bounds)?;
    let g = verify_family(&FamilySpec {
        family: family.clone(),
        search: opts.clone(),
    })?;
    Ok(grid_report("verify-family", to_value(&family), &[g]))
}

pub fn cmd_conjecture67(spec: &Conj67Spec, opts: &SearchOptions) -> Result<Finished> {
    let g = conjecture_6_7_search(spec, opts)?;
    let input = json!({
        "max_exp": spec.max_exp,
        "extra": spec.extra,
        "ideals": spec.ideals.iter().map(|i| i.to_expr()).collect::<Vec<_>>(),
    });
    let mut f = grid_report("conjecture67", input, &[g]);
    if f.report.outcome == Outcome::Negative {
        f.text.insert_str(0, "COUNTEREXAMPLE FOUND\n");
    }
    Ok(f)
}

pub(crate) fn grids(command: &str, input: Value, gs: &[GridReport]) -> Finished {
    grid_report(command, input, gs)
}

pub(crate) fn new_report(command: &str, input: Value) -> Report {
    Report::new(command, input)
}

pub(crate) fn search_row_verdict(o: &SearchOutcome) -> (&'static str, Outcome) {
    search_verdict(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_and_search() {
        let f = cmd_check("box(3,4)", "lex(x,y)").unwrap();
        assert_eq!(f.report.outcome, Outcome::Ok);
        let f = cmd_check("poset(ideal(x^4, y^3, x^3*y))", "lex(y,x)").unwrap();
        assert_eq!(f.report.outcome, Outcome::Negative);
        assert!(f.report.witness.is_some());
        let f = cmd_search("cart(path(1), explicit{Y})", &SearchOptions::default()).unwrap();
        assert_eq!(f.report.verdict, "no Macaulay order");
        assert_eq!(f.report.outcome.exit_code(), 1);
        let tight = SearchOptions {
            budget: Some(1),
            ..SearchOptions::default()
        };
        let f = cmd_search("diamond(box(2,2,3), box(3,3))", &tight).unwrap();
        assert_eq!(f.report.outcome.exit_code(), 3);
    }

    #[test]
    fn additive_outcomes() {
        assert_eq!(cmd_additive("box(2,3)", "lex(x,y)").unwrap().report.outcome, Outcome::Ok);
        let f = cmd_additive("heart(4,1,3,3)", "lex(x,y)").unwrap();
        assert_eq!(f.report.verdict, "order is not Macaulay");
    }

    #[test]
    fn shadow_command() {
        let f = cmd_shadow("box(2,2)", "1").unwrap();
        assert_eq!(f.report.rows[0]["upper"].as_array().unwrap().len(), 1);
        assert!(cmd_shadow("box(2,2)", "0,1").is_err());
        assert!(cmd_shadow("box(2,2)", "9").is_err());
    }

    #[test]
    fn reports_have_integer_numbers_only() {
        let f = cmd_verify_family("heart", &GridBounds { lo: Some(1), hi: Some(2) }, &SearchOptions::default()).unwrap();
        fn walk(v: &Value) {
            match v {
                Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "{n}"),
                Value::Array(a) => a.iter().for_each(walk),
                Value::Object(o) => o.values().for_each(walk),
                _ => {}
            }
        }
        walk(&to_value(&f.report));
        assert_eq!(f.report.outcome, Outcome::Ok);
    }
}
