//! The `macposet 1` text format for posets.
//!
//! ```text
//! macposet 1
//! name box(2,2)
//! elements 4
//! ranks 0 1 1 2
//! covers
//! 0 1
//! 0 2
//! 1 3
//! 2 3
//! labels x y
//! 0 0
//! 1 0
//! 0 1
//! 1 1
//! provenance 2
//! 0:0
//! 0:1 1:0
//! ```
//!
//! `name`, `labels` and `provenance` are optional. Under `covers`, each
//! `i j` line means `j` covers `i`. Under `labels`, line `k` holds element
//! `k`'s exponent vector. Under `provenance F`, line `k` lists element `k`'s
//! pre-images as `factor:source`. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use crate::construct::OperationResult;
use crate::error::{Error, Result};
use crate::monomial::ExponentVector;
use crate::order::{Origin, Provenance};
use crate::poset::{Labels, PosetSpec, RankedPoset};

pub const HEADER: &str = "macposet 1";

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn serialize_poset(p: &RankedPoset) -> String {
    serialize(p, None)
}

/// The poset with its provenance block.
pub fn serialize_operation(op: &OperationResult) -> String {
    serialize(&op.poset, Some(&op.provenance))
}

fn serialize(p: &RankedPoset, prov: Option<&Provenance>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    if !p.name().is_empty() {
        let _ = writeln!(out, "name {}", p.name());
    }
    let _ = writeln!(out, "elements {}", p.len());
    let _ = writeln!(out, "ranks {}", join(p.ranks()));
    let _ = writeln!(out, "covers");
    for (a, b) in p.covers() {
        let _ = writeln!(out, "{a} {b}");
    }
    if let Some(l) = p.labels() {
        let _ = writeln!(out, "labels {}", l.vars.join(" "));
        for e in &l.exps {
            let _ = writeln!(out, "{}", join(e.coords()));
        }
    }
    if let Some(pr) = prov {
        let _ = writeln!(out, "provenance {}", pr.factors);
        for o in &pr.origins {
            let _ = writeln!(out, "{}", join(o.preimages.iter().map(|(f, s)| format!("{f}:{s}"))));
        }
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

fn nums<T: std::str::FromStr>(line: usize, words: &[&str]) -> Result<Vec<T>> {
    words
        .iter()
        .map(|w| w.parse().map_err(|_| err(line, format!("expected a number, found `{w}`"))))
        .collect()
}

#[derive(PartialEq)]
enum Section {
    Head,
    Covers,
    Labels,
    Provenance,
}

/// Parses a poset file, returning the provenance block when present. Cover
/// and label lines are checked as they are read so errors cite their line;
/// the result then passes full validation.
pub fn deserialize(text: &str) -> Result<(RankedPoset, Option<Provenance>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, l)) => return Err(err(n, format!("expected `{HEADER}`, found `{l}`"))),
        None => return Err(err(1, "empty file")),
    }
    let mut name = String::new();
    let mut n: Option<usize> = None;
    let mut ranks: Option<Vec<usize>> = None;
    let mut covers = Vec::new();
    let mut vars: Option<Vec<String>> = None;
    let mut exps = Vec::new();
    let mut prov: Option<Provenance> = None;
    let mut section = Section::Head;
    let mut last = 1;
    for (ln, line) in lines {
        last = ln;
        let words: Vec<&str> = line.split_whitespace().collect();
        let ranks_ref = |n: Option<usize>, ranks: &Option<Vec<usize>>| -> Result<(usize, Vec<usize>)> {
            match (n, ranks) {
                (Some(n), Some(r)) => Ok((n, r.clone())),
                _ => Err(err(ln, "`elements` and `ranks` must come before this section")),
            }
        };
        match words[0] {
            "name" => name = line["name".len()..].trim().to_string(),
            "elements" => {
                if words.len() != 2 {
                    return Err(err(ln, "expected `elements N`"));
                }
                n = Some(nums(ln, &words[1..])?[0]);
            }
            "ranks" => {
                let r: Vec<usize> = nums(ln, &words[1..])?;
                if n != Some(r.len()) {
                    return Err(err(ln, format!("{} ranks for {} elements", r.len(), n.unwrap_or(0))));
                }
                ranks = Some(r);
            }
            "covers" => {
                ranks_ref(n, &ranks)?;
                section = Section::Covers;
            }
            "labels" => {
                ranks_ref(n, &ranks)?;
                vars = Some(words[1..].iter().map(|s| s.to_string()).collect());
                section = Section::Labels;
            }
            "provenance" => {
                ranks_ref(n, &ranks)?;
                if words.len() != 2 {
                    return Err(err(ln, "expected `provenance F`"));
                }
                prov = Some(Provenance {
                    factors: nums(ln, &words[1..])?[0],
                    origins: vec![],
                });
                section = Section::Provenance;
            }
            _ => match section {
                Section::Head => return Err(err(ln, format!("unknown line `{line}`"))),
                Section::Covers => {
                    let (n, r) = ranks_ref(n, &ranks)?;
                    let v: Vec<usize> = nums(ln, &words)?;
                    if v.len() != 2 {
                        return Err(err(ln, "a cover line holds two ids"));
                    }
                    let (a, b) = (v[0], v[1]);
                    if a >= n || b >= n {
                        return Err(err(ln, format!("cover {a} {b} names an element outside 0..{n}")));
                    }
                    if r[b] != r[a] + 1 {
                        return Err(err(
                            ln,
                            format!("cover {a} {b} joins ranks {} and {}; a cover must raise the rank by one", r[a], r[b]),
                        ));
                    }
                    covers.push((a, b));
                }
                Section::Labels => {
                    let v: Vec<u32> = nums(ln, &words)?;
                    let k = vars.as_ref().map_or(0, Vec::len);
                    if v.len() != k {
                        return Err(err(ln, format!("label has {} exponents for {k} variables", v.len())));
                    }
                    exps.push(ExponentVector::new(v));
                }
                Section::Provenance => {
                    let pre = words
                        .iter()
                        .map(|w| {
                            let (f, s) = w
                                .split_once(':')
                                .ok_or_else(|| err(ln, format!("expected `factor:source`, found `{w}`")))?;
                            let v: Vec<usize> = nums(ln, &[f, s])?;
                            Ok((v[0], v[1]))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if let Some(p) = prov.as_mut() {
                        p.origins.push(Origin { preimages: pre });
                    }
                }
            },
        }
    }
    let (Some(n), Some(ranks)) = (n, ranks) else {
        return Err(err(last, "missing `elements` or `ranks`"));
    };
    let labels = match vars {
        None => None,
        Some(vars) => {
            if exps.len() != n {
                return Err(err(last, format!("{} labels for {n} elements", exps.len())));
            }
            Some(Labels { vars, exps })
        }
    };
    if let Some(p) = &prov {
        if p.origins.len() != n {
            return Err(err(last, format!("{} provenance lines for {n} elements", p.origins.len())));
        }
    }
    let poset = RankedPoset::from_spec(PosetSpec {
        name,
        ranks,
        covers,
        labels,
    })?;
    Ok((poset, prov))
}

pub fn deserialize_poset(text: &str) -> Result<RankedPoset> {
    deserialize(text).map(|(p, _)| p)
}

pub fn read_poset_file(path: &str) -> Result<RankedPoset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    deserialize_poset(&text).map_err(|e| match e {
        Error::Format { line, msg } => Error::Format {
            line,
            msg: format!("{path}: {msg}"),
        },
        other => other,
    })
}
