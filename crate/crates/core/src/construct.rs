//! Constructors (paths, boxes, spiders, hearts) and the poset operations:
//! disjoint union, wedge, diamond, fiber and cartesian products, and adding or
//! removing an extreme element.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::monomial::{default_vars, standard_monomial_poset, ExponentVector, MonomialIdeal};
use crate::order::{Origin, Provenance};
use crate::poset::{Labels, PosetSpec, RankedPoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    DisjointUnion,
    Wedge,
    Diamond,
    Fiber,
    Cartesian,
}

/// Output of a poset operation together with where each element came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationResult {
    pub poset: RankedPoset,
    pub provenance: Provenance,
    pub operation: Operation,
    pub notes: Vec<String>,
}

impl OperationResult {
    /// `result[s]` is the output id of element `s` of factor `i`.
    pub fn factor_embedding(&self, factor: usize) -> Vec<usize> {
        let pairs = self.provenance.embedding_of(factor);
        let n = pairs.iter().map(|&(_, s)| s + 1).max().unwrap_or(0);
        let mut out = vec![usize::MAX; n];
        for (e, s) in pairs {
            out[s] = e;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extreme {
    Top,
    Bottom,
}

/// The chain `0 < 1 < ... < d`, labeled by powers of `x`.
pub fn path(d: usize) -> RankedPoset {
    RankedPoset::from_spec(PosetSpec {
        name: format!("path({d})"),
        ranks: (0..=d).collect(),
        covers: (0..d).map(|i| (i, i + 1)).collect(),
        labels: Some(Labels {
            vars: vec!["x".into()],
            exps: (0..=d as u32).map(|k| ExponentVector::new(vec![k])).collect(),
        }),
    })
    .expect("a chain is ranked")
}

/// The box poset with side lengths `dims`: monomials of
/// `K[x_1..x_n]/(x_1^{d_1}, ..., x_n^{d_n})`. Variables are named `x`, `x,y`,
/// `x,y,z`, or `x1..xn`. Ids run by degree, then lex-descending.
pub fn boxp(dims: &[u32]) -> RankedPoset {
    assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 1), "box sides must be >= 1");
    let ideal = MonomialIdeal::box_ideal(default_vars(dims.len()), dims).expect("arity matches");
    let name = format!(
        "box({})",
        dims.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    );
    standard_monomial_poset(&ideal)
        .expect("box quotients are finite")
        .with_name(name)
}

/// Wedge of paths of the given lengths.
pub fn spider(legs: &[usize]) -> Result<OperationResult> {
    if legs.is_empty() || legs.contains(&0) {
        return Err(precondition("spider", "legs must be nonempty with lengths >= 1"));
    }
    let paths: Vec<_> = legs.iter().map(|&l| path(l)).collect();
    let mut r = wedge(&paths)?;
    r.poset = r.poset.with_name(format!(
        "spider({})",
        legs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    ));
    Ok(r)
}

/// Standard monomials of `(x^a0, y^a1) ∩ (x^b0, y^b1)`.
pub fn heart(a0: u32, a1: u32, b0: u32, b1: u32) -> Result<RankedPoset> {
    if [a0, a1, b0, b1].contains(&0) {
        return Err(precondition("heart", "side lengths must be >= 1"));
    }
    let v = default_vars(2);
    let i = MonomialIdeal::box_ideal(v.clone(), &[a0, a1])?;
    let j = MonomialIdeal::box_ideal(v, &[b0, b1])?;
    Ok(standard_monomial_poset(&i.intersection(&j)?)?
        .with_name(format!("heart({a0},{a1},{b0},{b1})")))
}

/// `Y`: a bottom below a single element covered by two maxima.
pub fn named_y() -> RankedPoset {
    adjoin_extreme(&spider(&[1, 1]).expect("legal legs").poset, Extreme::Bottom)
        .expect("spider has a single minimum")
        .with_name("Y")
}

/// The monomial poset of `K[y,z]/(y^2 - z^2, y^3, z^3)`: basis `1; y, z;
/// y^2 = z^2, yz`, each degree-one element below both degree-two ones.
pub fn named_yz() -> RankedPoset {
    RankedPoset::from_spec(PosetSpec {
        name: "YZ".into(),
        ranks: vec![0, 1, 1, 2, 2],
        covers: vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
        labels: None,
    })
    .expect("fixed covers are ranked")
}

fn join_names(ps: &[RankedPoset]) -> String {
    ps.iter().map(|p| p.name()).collect::<Vec<_>>().join(", ")
}

/// Side by side, no relations between the parts.
pub fn disjoint_union(ps: &[RankedPoset]) -> OperationResult {
    let mut ranks = Vec::new();
    let mut covers = Vec::new();
    let mut origins = Vec::new();
    for (f, p) in ps.iter().enumerate() {
        let off = ranks.len();
        ranks.extend_from_slice(p.ranks());
        covers.extend(p.covers().map(|(a, b)| (a + off, b + off)));
        origins.extend((0..p.len()).map(|s| Origin::single(f, s)));
    }
    let poset = RankedPoset::from_spec(PosetSpec {
        name: format!("union({})", join_names(ps)),
        ranks,
        covers,
        labels: None,
    })
    .expect("union of ranked posets is ranked");
    OperationResult {
        poset,
        provenance: Provenance {
            factors: ps.len(),
            origins,
        },
        operation: Operation::DisjointUnion,
        notes: vec![],
    }
}

fn unique_extreme(p: &RankedPoset, which: Extreme) -> Option<usize> {
    let ex = match which {
        Extreme::Top => p.maximal_elements(),
        Extreme::Bottom => p.minimal_elements(),
    };
    (ex.len() == 1).then(|| ex[0])
}

/// Variable lists of labeled factors joined into one; names are suffixed with
/// `_i` (1-based factor index) only when they would collide.
fn joined_vars(ps: &[&Labels]) -> (Vec<String>, Vec<usize>) {
    let mut offsets = Vec::with_capacity(ps.len());
    let mut all: Vec<String> = Vec::new();
    for l in ps {
        offsets.push(all.len());
        all.extend(l.vars.iter().cloned());
    }
    let distinct: BTreeSet<&String> = all.iter().collect();
    if distinct.len() != all.len() {
        all = ps
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.vars.iter().map(move |v| format!("{v}_{}", i + 1)))
            .collect();
    }
    (all, offsets)
}

/// Spreads each factor's exponent vectors into the joined variable list.
fn glue_labels(
    ps: &[RankedPoset],
    origins: &[Origin],
) -> Option<Labels> {
    let labels: Vec<&Labels> = ps.iter().map(|p| p.labels()).collect::<Option<_>>()?;
    let (vars, offsets) = joined_vars(&labels);
    let mut exps = Vec::with_capacity(origins.len());
    for o in origins {
        let mut c = vec![0u32; vars.len()];
        let mut first: Option<Vec<u32>> = None;
        for &(f, s) in &o.preimages {
            let mut cf = vec![0u32; vars.len()];
            for (k, &x) in labels[f].exps[s].coords().iter().enumerate() {
                cf[offsets[f] + k] = x;
            }
            // glued elements need the same label from every side
            match &first {
                None => first = Some(cf),
                Some(prev) if *prev != cf => return None,
                _ => {}
            }
        }
        if let Some(v) = first {
            c = v;
        }
        exps.push(ExponentVector::new(c));
    }
    Some(Labels { vars, exps })
}

/// Disjoint union with all minima identified into one element (id 0).
pub fn wedge(ps: &[RankedPoset]) -> Result<OperationResult> {
    if ps.is_empty() {
        return Err(precondition("wedge", "no factors"));
    }
    let mut mins = Vec::with_capacity(ps.len());
    for (f, p) in ps.iter().enumerate() {
        let m = unique_extreme(p, Extreme::Bottom)
            .ok_or_else(|| precondition("wedge", format!("factor {f} has no unique minimum")))?;
        mins.push(m);
    }
    let glue_rank = ps[0].rank(mins[0]);
    if let Some(f) = (0..ps.len()).find(|&f| ps[f].rank(mins[f]) != glue_rank) {
        return Err(precondition(
            "wedge",
            format!("factor {f} has its minimum at a different rank"),
        ));
    }
    let mut ranks = vec![glue_rank];
    let mut origins = vec![Origin {
        preimages: mins.iter().enumerate().map(|(f, &m)| (f, m)).collect(),
    }];
    let mut covers = Vec::new();
    for (f, p) in ps.iter().enumerate() {
        let mut map = vec![0usize; p.len()];
        for s in 0..p.len() {
            if s != mins[f] {
                map[s] = ranks.len();
                ranks.push(p.rank(s));
                origins.push(Origin::single(f, s));
            }
        }
        covers.extend(p.covers().map(|(a, b)| (map[a], map[b])));
    }
    let labels = glue_labels(ps, &origins);
    let poset = RankedPoset::from_spec(PosetSpec {
        name: format!("wedge({})", join_names(ps)),
        ranks,
        covers,
        labels,
    })?;
    let mut notes = vec![];
    if glue_rank != 0 {
        notes.push(format!("glued at rank {glue_rank}"));
    }
    Ok(OperationResult {
        poset,
        provenance: Provenance {
            factors: ps.len(),
            origins,
        },
        operation: Operation::Wedge,
        notes,
    })
}

/// Disjoint union with minima identified (id 0) and maxima identified (last
/// id). Factors must have a unique minimum and maximum, distinct from each
/// other, with all minima and all maxima at matching ranks.
pub fn diamond(ps: &[RankedPoset]) -> Result<OperationResult> {
    if ps.is_empty() {
        return Err(precondition("diamond", "no factors"));
    }
    let mut ends = Vec::with_capacity(ps.len());
    for (f, p) in ps.iter().enumerate() {
        let lo = unique_extreme(p, Extreme::Bottom)
            .ok_or_else(|| precondition("diamond", format!("factor {f} has no unique minimum")))?;
        let hi = unique_extreme(p, Extreme::Top)
            .ok_or_else(|| precondition("diamond", format!("factor {f} has no unique maximum")))?;
        if lo == hi {
            return Err(precondition(
                "diamond",
                format!("factor {f} is a single element"),
            ));
        }
        ends.push((lo, hi));
    }
    let (r_lo, r_hi) = (ps[0].rank(ends[0].0), ps[0].rank(ends[0].1));
    for (f, p) in ps.iter().enumerate() {
        if p.rank(ends[f].0) != r_lo || p.rank(ends[f].1) != r_hi {
            return Err(precondition(
                "diamond",
                format!(
                    "factor {f} spans ranks {}..{}, factor 0 spans {r_lo}..{r_hi}",
                    p.rank(ends[f].0),
                    p.rank(ends[f].1)
                ),
            ));
        }
    }
    let mut ranks = vec![r_lo];
    let mut origins = vec![Origin {
        preimages: ends.iter().enumerate().map(|(f, e)| (f, e.0)).collect(),
    }];
    let mut maps = Vec::with_capacity(ps.len());
    for (f, p) in ps.iter().enumerate() {
        let mut map = vec![0usize; p.len()];
        for s in 0..p.len() {
            if s != ends[f].0 && s != ends[f].1 {
                map[s] = ranks.len();
                ranks.push(p.rank(s));
                origins.push(Origin::single(f, s));
            }
        }
        maps.push(map);
    }
    let top = ranks.len();
    ranks.push(r_hi);
    origins.push(Origin {
        preimages: ends.iter().enumerate().map(|(f, e)| (f, e.1)).collect(),
    });
    let mut covers = BTreeSet::new();
    for (f, p) in ps.iter().enumerate() {
        maps[f][ends[f].1] = top;
        for (a, b) in p.covers() {
            covers.insert((maps[f][a], maps[f][b]));
        }
    }
    let poset = RankedPoset::from_spec(PosetSpec {
        name: format!("diamond({})", join_names(ps)),
        ranks,
        covers: covers.into_iter().collect(),
        labels: None,
    })?;
    Ok(OperationResult {
        poset,
        provenance: Provenance {
            factors: ps.len(),
            origins,
        },
        operation: Operation::Diamond,
        notes: vec![],
    })
}

fn check_injection(name: &str, c: &RankedPoset, target: &RankedPoset, map: &[usize]) -> Result<()> {
    if map.len() != c.len() {
        return Err(Error::InvalidInjection(format!(
            "{name}: {} images for {} elements",
            map.len(),
            c.len()
        )));
    }
    let mut hit = vec![false; target.len()];
    for (s, &t) in map.iter().enumerate() {
        if t >= target.len() {
            return Err(Error::InvalidInjection(format!("{name}: image of {s} out of range")));
        }
        if std::mem::replace(&mut hit[t], true) {
            return Err(Error::InvalidInjection(format!("{name}: not injective at {t}")));
        }
        if target.rank(t) != c.rank(s) {
            return Err(Error::InvalidInjection(format!(
                "{name}: not rank-preserving at {s}"
            )));
        }
    }
    let up_c = c.strict_upsets();
    let up_t = target.strict_upsets();
    for a in 0..c.len() {
        for b in 0..c.len() {
            if up_c[a].contains(b) != up_t[map[a]].contains(map[b]) {
                return Err(Error::InvalidInjection(format!(
                    "{name}: not an order embedding at ({a}, {b})"
                )));
            }
        }
    }
    Ok(())
}

/// Glues `pa` and `pb` along the common subposet `pc`, embedded by `ia` and
/// `ib`. Ids: `pc`'s elements first, then the rest of `pa`, then the rest of
/// `pb`. Covers are the inherited covers of both sides.
pub fn fiber_product(
    pa: &RankedPoset,
    pb: &RankedPoset,
    pc: &RankedPoset,
    ia: &[usize],
    ib: &[usize],
) -> Result<OperationResult> {
    check_injection("first injection", pc, pa, ia)?;
    check_injection("second injection", pc, pb, ib)?;
    let mut ranks: Vec<usize> = pc.ranks().to_vec();
    let mut origins: Vec<Origin> = (0..pc.len())
        .map(|c| Origin {
            preimages: vec![(0, ia[c]), (1, ib[c])],
        })
        .collect();
    let mut maps = [vec![usize::MAX; pa.len()], vec![usize::MAX; pb.len()]];
    for c in 0..pc.len() {
        maps[0][ia[c]] = c;
        maps[1][ib[c]] = c;
    }
    for (f, p) in [pa, pb].into_iter().enumerate() {
        for s in 0..p.len() {
            if maps[f][s] == usize::MAX {
                maps[f][s] = ranks.len();
                ranks.push(p.rank(s));
                origins.push(Origin::single(f, s));
            }
        }
    }
    let mut covers = BTreeSet::new();
    for (f, p) in [pa, pb].into_iter().enumerate() {
        for (a, b) in p.covers() {
            covers.insert((maps[f][a], maps[f][b]));
        }
    }
    let labels = match (pa.labels(), pb.labels()) {
        (Some(la), Some(lb)) if la.vars == lb.vars => {
            let agree = (0..pc.len()).all(|c| la.exps[ia[c]] == lb.exps[ib[c]]);
            agree.then(|| Labels {
                vars: la.vars.clone(),
                exps: origins
                    .iter()
                    .map(|o| {
                        let (f, s) = o.preimages[0];
                        if f == 0 { la.exps[s].clone() } else { lb.exps[s].clone() }
                    })
                    .collect(),
            })
        }
        _ => None,
    };
    let poset = RankedPoset::from_spec(PosetSpec {
        name: format!("fiber({}, {} over {})", pa.name(), pb.name(), pc.name()),
        ranks,
        covers: covers.into_iter().collect(),
        labels,
    })?;
    Ok(OperationResult {
        poset,
        provenance: Provenance {
            factors: 2,
            origins,
        },
        operation: Operation::Fiber,
        notes: vec![],
    })
}

/// Fiber product of the standard-monomial posets of `I` and `J` over that of
/// `I + J`, the poset-side model of `R/(I ∩ J)`.
pub fn fiber_of_ideals(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<OperationResult> {
    let s = i.sum(j)?;
    let pa = standard_monomial_poset(i)?;
    let pb = standard_monomial_poset(j)?;
    let pc = standard_monomial_poset(&s)?;
    let ia = crate::monomial::inclusion_map(i, &s)?;
    let ib = crate::monomial::inclusion_map(j, &s)?;
    fiber_product(&pa, &pb, &pc, &ia, &ib)
}

/// Pairs `(a, b)` with id `a * |q| + b`; covers move one coordinate by a cover.
pub fn cartesian_product(p: &RankedPoset, q: &RankedPoset) -> OperationResult {
    let m = q.len();
    let mut ranks = Vec::with_capacity(p.len() * m);
    let mut origins = Vec::with_capacity(p.len() * m);
    for a in 0..p.len() {
        for b in 0..m {
            ranks.push(p.rank(a) + q.rank(b));
            origins.push(Origin {
                preimages: vec![(0, a), (1, b)],
            });
        }
    }
    let mut covers = Vec::new();
    for a in 0..p.len() {
        for b in 0..m {
            for &a2 in p.up_covers(a) {
                covers.push((a * m + b, a2 * m + b));
            }
            for &b2 in q.up_covers(b) {
                covers.push((a * m + b, a * m + b2));
            }
        }
    }
    let labels = match (p.labels(), q.labels()) {
        (Some(lp), Some(lq)) => {
            let (vars, _) = joined_vars(&[lp, lq]);
            let exps = (0..p.len())
                .flat_map(|a| {
                    (0..m).map(move |b| {
                        let mut c = lp.exps[a].coords().to_vec();
                        c.extend_from_slice(lq.exps[b].coords());
                        ExponentVector::new(c)
                    })
                })
                .collect();
            Some(Labels { vars, exps })
        }
        _ => None,
    };
    let poset = RankedPoset::from_spec(PosetSpec {
        name: format!("cart({}, {})", p.name(), q.name()),
        ranks,
        covers,
        labels,
    })
    .expect("product of ranked posets is ranked");
    OperationResult {
        poset,
        provenance: Provenance {
            factors: 2,
            origins,
        },
        operation: Operation::Cartesian,
        notes: vec![],
    }
}

/// Adds a new largest (`hat`) or smallest (`uhat`) element.
///
/// A new top covers every maximal element; they must share one rank. A new
/// bottom is covered by every minimal element; they must share one rank `k`.
/// If `k >= 1` the bottom goes to rank `k - 1`; if `k = 0` every rank shifts up
/// by one first. The new top gets the last id, a new bottom id 0. Labels are
/// dropped.
pub fn adjoin_extreme(p: &RankedPoset, which: Extreme) -> Result<RankedPoset> {
    if p.is_empty() {
        return Err(precondition("adjoin", "empty poset"));
    }
    let n = p.len();
    match which {
        Extreme::Top => {
            let maxes = p.maximal_elements();
            let r = p.rank(maxes[0]);
            if maxes.iter().any(|&m| p.rank(m) != r) {
                return Err(precondition("hat", "maximal elements lie at different ranks"));
            }
            let mut spec = p.to_spec();
            spec.name = format!("hat({})", p.name());
            spec.ranks.push(r + 1);
            spec.covers.extend(maxes.iter().map(|&m| (m, n)));
            spec.labels = None;
            RankedPoset::from_spec(spec)
        }
        Extreme::Bottom => {
            let mins = p.minimal_elements();
            let k = p.rank(mins[0]);
            if mins.iter().any(|&m| p.rank(m) != k) {
                return Err(precondition("uhat", "minimal elements lie at different ranks"));
            }
            let shift = usize::from(k == 0);
            let mut ranks = vec![k + shift - 1];
            ranks.extend(p.ranks().iter().map(|r| r + shift));
            let mut covers: Vec<_> = mins.iter().map(|&m| (0, m + 1)).collect();
            covers.extend(p.covers().map(|(a, b)| (a + 1, b + 1)));
            RankedPoset::from_spec(PosetSpec {
                name: format!("uhat({})", p.name()),
                ranks,
                covers,
                labels: None,
            })
        }
    }
}

/// Removes the unique largest (`bar`) or smallest (`ubar`) element. Other
/// ranks are unchanged; ids are compacted in order.
pub fn remove_extreme(p: &RankedPoset, which: Extreme) -> Result<RankedPoset> {
    let (op, tag) = match which {
        Extreme::Top => ("bar", "maximum"),
        Extreme::Bottom => ("ubar", "minimum"),
    };
    let x = unique_extreme(p, which)
        .ok_or_else(|| precondition(op, format!("no unique {tag}")))?;
    let keep: Vec<usize> = (0..p.len()).filter(|&e| e != x).collect();
    let mut new_id = vec![usize::MAX; p.len()];
    for (i, &e) in keep.iter().enumerate() {
        new_id[e] = i;
    }
    let labels = p.labels().map(|l| Labels {
        vars: l.vars.clone(),
        exps: keep.iter().map(|&e| l.exps[e].clone()).collect(),
    });
    RankedPoset::from_spec(PosetSpec {
        name: format!("{op}({})", p.name()),
        ranks: keep.iter().map(|&e| p.rank(e)).collect(),
        covers: p
            .covers()
            .filter(|&(a, b)| a != x && b != x)
            .map(|(a, b)| (new_id[a], new_id[b]))
            .collect(),
        labels,
    })
}
