//! Within-level total orders. A [`LevelOrderFamily`] lists each level from
//! largest to smallest, so `Seg_d q` is always the first `q` entries.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::RankedPoset;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelOrderFamily {
    per_level: Vec<Vec<usize>>,
}

impl LevelOrderFamily {
    /// Level `d`, largest first. Empty past the top rank.
    pub fn level(&self, d: usize) -> &[usize] {
        self.per_level.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.per_level
    }

    pub fn num_levels(&self) -> usize {
        self.per_level.len()
    }

    pub fn element_count(&self) -> usize {
        self.per_level.iter().map(Vec::len).sum()
    }

    /// `result[e]` is the index of `e` in its level list (0 = largest).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.element_count()];
        for l in &self.per_level {
            for (i, &e) in l.iter().enumerate() {
                pos[e] = i;
            }
        }
        pos
    }

    /// Checks that this family orders `p`.
    pub fn check_against(&self, p: &RankedPoset) -> Result<()> {
        if self.per_level.len() != p.num_levels() {
            return Err(Error::InvalidOrder(format!(
                "order has {} levels, poset has {}",
                self.per_level.len(),
                p.num_levels()
            )));
        }
        for (d, list) in self.per_level.iter().enumerate() {
            let mut want = p.level(d).to_vec();
            let mut got = list.clone();
            want.sort_unstable();
            got.sort_unstable();
            if want != got {
                return Err(Error::InvalidOrder(format!(
                    "level {d} list is not a permutation of the level"
                )));
            }
        }
        Ok(())
    }

    /// Reverses every level list.
    pub fn reversed(&self) -> Self {
        LevelOrderFamily {
            per_level: self
                .per_level
                .iter()
                .map(|l| l.iter().rev().copied().collect())
                .collect(),
        }
    }
}

/// Builds a family from explicit descending lists, one per level.
pub fn order_from_lists(p: &RankedPoset, lists: Vec<Vec<usize>>) -> Result<LevelOrderFamily> {
    if lists.len() != p.num_levels() {
        return Err(Error::InvalidOrder(format!(
            "{} lists given for {} levels",
            lists.len(),
            p.num_levels()
        )));
    }
    for (d, list) in lists.iter().enumerate() {
        let mut seen = HashSet::new();
        for &e in list {
            if e >= p.len() || p.rank(e) != d {
                return Err(Error::InvalidOrder(format!(
                    "level {d}: element {e} does not belong to this level"
                )));
            }
            if !seen.insert(e) {
                return Err(Error::InvalidOrder(format!("level {d}: element {e} repeated")));
            }
        }
        if list.len() != p.level(d).len() {
            return Err(Error::InvalidOrder(format!(
                "level {d}: {} of {} elements listed",
                list.len(),
                p.level(d).len()
            )));
        }
    }
    Ok(LevelOrderFamily { per_level: lists })
}

/// The family that lists every level in ascending id order.
pub fn id_order(p: &RankedPoset) -> LevelOrderFamily {
    LevelOrderFamily {
        per_level: (0..p.num_levels()).map(|d| p.level(d).to_vec()).collect(),
    }
}

fn labels_or_err(p: &RankedPoset) -> Result<&crate::poset::Labels> {
    p.labels()
        .ok_or_else(|| Error::InvalidOrder(format!("`{}` carries no exponent labels", p.name())))
}

fn no_label_ties(p: &RankedPoset, per_level: &[Vec<usize>]) -> Result<()> {
    for (d, l) in per_level.iter().enumerate() {
        for w in l.windows(2) {
            if p.label(w[0]) == p.label(w[1]) {
                return Err(Error::InvalidOrder(format!(
                    "level {d}: elements {} and {} share a label",
                    w[0], w[1]
                )));
            }
        }
    }
    Ok(())
}

/// Lex order with `priority[0]` the largest variable: a monomial is larger
/// when, reading variables in priority order, its first differing exponent is
/// bigger.
pub fn lex_order<S: AsRef<str>>(p: &RankedPoset, priority: &[S]) -> Result<LevelOrderFamily> {
    let labels = labels_or_err(p)?;
    let idx = resolve_priority(&labels.vars, priority)?;
    let mut per_level: Vec<Vec<usize>> = (0..p.num_levels()).map(|d| p.level(d).to_vec()).collect();
    for l in &mut per_level {
        l.sort_by_key(|&e| {
            let c = labels.exps[e].coords();
            std::cmp::Reverse(idx.iter().map(|&i| c[i]).collect::<Vec<_>>())
        });
    }
    no_label_ties(p, &per_level)?;
    Ok(LevelOrderFamily { per_level })
}

fn resolve_priority<S: AsRef<str>>(vars: &[String], priority: &[S]) -> Result<Vec<usize>> {
    let idx = priority
        .iter()
        .map(|v| {
            vars.iter()
                .position(|w| w == v.as_ref())
                .ok_or_else(|| Error::InvalidOrder(format!("unknown variable `{}`", v.as_ref())))
        })
        .collect::<Result<Vec<_>>>()?;
    let uniq: HashSet<_> = idx.iter().collect();
    if idx.len() != vars.len() || uniq.len() != idx.len() {
        return Err(Error::InvalidOrder(format!(
            "priority must list each of {} exactly once",
            vars.join(",")
        )));
    }
    Ok(idx)
}

/// The twist order on a two-variable labeled poset. With `high` the index of
/// the variable ranked larger under the base lex order and `threshold` the
/// splitting exponent: elements whose `high` exponent is below `threshold`
/// (the low strip) are ordered by lex and sit below the rest, which are ordered
/// by reversed lex.
pub fn twist_order_with(p: &RankedPoset, high: usize, threshold: u32) -> Result<LevelOrderFamily> {
    let labels = labels_or_err(p)?;
    if labels.vars.len() != 2 || high > 1 {
        return Err(Error::InvalidOrder(
            "twist order needs two-variable labels".into(),
        ));
    }
    let low = 1 - high;
    let mut per_level = Vec::with_capacity(p.num_levels());
    for d in 0..p.num_levels() {
        let key = |e: &usize| {
            let c = labels.exps[*e].coords();
            (c[high], c[low])
        };
        let (mut m1, mut m0): (Vec<usize>, Vec<usize>) = p
            .level(d)
            .iter()
            .partition(|&&e| labels.exps[e].coords()[high] >= threshold);
        // reversed lex, largest first, is lex ascending
        m1.sort_by_key(key);
        m0.sort_by_key(|e| std::cmp::Reverse(key(e)));
        m1.extend(m0);
        per_level.push(m1);
    }
    no_label_ties(p, &per_level)?;
    Ok(LevelOrderFamily { per_level })
}

/// Twist order on a heart poset over variables `x, y` with base lex `y > x`
/// and low strip `y`-exponent `< a1`.
pub fn twist_order(p: &RankedPoset, a1: u32) -> Result<LevelOrderFamily> {
    twist_order_with(p, 1, a1)
}

/// Where an element of an operation's output came from: every `(factor,
/// source id)` pre-image. Glued extremes have several.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    pub preimages: Vec<(usize, usize)>,
}

impl Origin {
    pub fn single(factor: usize, source: usize) -> Self {
        Origin {
            preimages: vec![(factor, source)],
        }
    }

    pub fn factor(&self) -> usize {
        self.preimages[0].0
    }

    pub fn source(&self) -> usize {
        self.preimages[0].1
    }

    pub fn is_merged(&self) -> bool {
        self.preimages.len() > 1
    }
}

/// Per-element origins for the output of a poset operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub factors: usize,
    pub origins: Vec<Origin>,
}

impl Provenance {
    /// Output ids whose pre-images include an element of `factor`, together
    /// with that pre-image, in output id order.
    pub fn embedding_of(&self, factor: usize) -> Vec<(usize, usize)> {
        self.origins
            .iter()
            .enumerate()
            .filter_map(|(e, o)| {
                o.preimages
                    .iter()
                    .find(|(f, _)| *f == factor)
                    .map(|&(_, s)| (e, s))
            })
            .collect()
    }
}

/// Union simplicial order: within each level, all of factor `i` lies below all
/// of factor `j` when `i < j`, and each factor keeps its own order. Glued
/// elements go last in their level.
pub fn union_simplicial_order(
    p: &RankedPoset,
    prov: &Provenance,
    factor_orders: &[LevelOrderFamily],
) -> Result<LevelOrderFamily> {
    let precedence: Vec<usize> = (0..factor_orders.len()).collect();
    union_simplicial_order_by(p, prov, factor_orders, &precedence)
}

/// Union simplicial order with an explicit factor ranking: `precedence` lists
/// the factors from the bottom block to the top block.
pub fn union_simplicial_order_by(
    p: &RankedPoset,
    prov: &Provenance,
    factor_orders: &[LevelOrderFamily],
    precedence: &[usize],
) -> Result<LevelOrderFamily> {
    if prov.origins.len() != p.len() {
        return Err(Error::InvalidOrder(format!(
            "provenance covers {} of {} elements",
            prov.origins.len(),
            p.len()
        )));
    }
    if factor_orders.len() != prov.factors {
        return Err(Error::ArityMismatch {
            expected: prov.factors,
            found: factor_orders.len(),
        });
    }
    let mut sorted = precedence.to_vec();
    sorted.sort_unstable();
    if sorted != (0..prov.factors).collect::<Vec<_>>() {
        return Err(Error::InvalidOrder(
            "precedence must permute the factors".into(),
        ));
    }
    let mut block = vec![0; prov.factors];
    for (b, &f) in precedence.iter().enumerate() {
        block[f] = b;
    }
    let fpos: Vec<Vec<usize>> = factor_orders.iter().map(|o| o.positions()).collect();
    let mut per_level = Vec::with_capacity(p.num_levels());
    for d in 0..p.num_levels() {
        let mut l = p.level(d).to_vec();
        for &e in &l {
            let o = &prov.origins[e];
            if o.preimages.is_empty() {
                return Err(Error::InvalidOrder(format!("element {e} has no provenance")));
            }
            let (f, s) = (o.factor(), o.source());
            if f >= prov.factors || s >= fpos[f].len() {
                return Err(Error::InvalidOrder(format!(
                    "element {e}: factor order does not cover source {s}"
                )));
            }
        }
        l.sort_by_key(|&e| {
            let o = &prov.origins[e];
            if o.is_merged() {
                (true, 0, 0)
            } else {
                let f = o.factor();
                (false, prov.factors - block[f], fpos[f][o.source()])
            }
        });
        per_level.push(l);
    }
    Ok(LevelOrderFamily { per_level })
}

/// Restricts `o` to the subposet `sub`, where `embedding[i]` is the id in
/// `o`'s poset of element `i` of `sub`. Each level of `sub` keeps the relative
/// order its elements had in `o`.
pub fn restrict_order(
    o: &LevelOrderFamily,
    sub: &RankedPoset,
    embedding: &[usize],
) -> Result<LevelOrderFamily> {
    if embedding.len() != sub.len() {
        return Err(Error::InvalidInjection(format!(
            "embedding has {} entries for {} elements",
            embedding.len(),
            sub.len()
        )));
    }
    let pos = o.positions();
    let mut level_of = vec![usize::MAX; o.element_count()];
    for (d, l) in o.levels().iter().enumerate() {
        for &e in l {
            level_of[e] = d;
        }
    }
    let mut per_level = Vec::with_capacity(sub.num_levels());
    for d in 0..sub.num_levels() {
        let mut l = sub.level(d).to_vec();
        for &i in &l {
            if embedding[i] >= level_of.len() {
                return Err(Error::InvalidInjection(format!("image of {i} out of range")));
            }
        }
        l.sort_by_key(|&i| (level_of[embedding[i]], pos[embedding[i]]));
        per_level.push(l);
    }
    Ok(LevelOrderFamily { per_level })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::monomial::{standard_monomial_poset, MonomialIdeal};

    fn names(p: &RankedPoset, l: &[usize]) -> Vec<String> {
        let v = &p.labels().unwrap().vars;
        l.iter().map(|&e| p.label(e).unwrap().display(v)).collect()
    }

    #[test]
    fn from_lists() {
        let p = construct::path(2);
        assert!(order_from_lists(&p, vec![vec![0], vec![1], vec![2]]).is_ok());
        let b = construct::boxp(&[2, 2]);
        let l1 = b.level(1).to_vec();
        let o = order_from_lists(&b, vec![b.level(0).to_vec(), l1.clone(), b.level(2).to_vec()]).unwrap();
        assert_eq!(o.level(1)[0], l1[0]);
        let dup = vec![b.level(0).to_vec(), vec![l1[0], l1[0]], b.level(2).to_vec()];
        let err = order_from_lists(&b, dup).unwrap_err().to_string();
        assert!(err.contains("level 1"), "{err}");
    }

    #[test]
    fn lex_degree_two_in_three_vars() {
        let i = MonomialIdeal::parse_generators(&["x", "y", "z"], &["x^3", "y^3", "z^3"]).unwrap();
        let p = standard_monomial_poset(&i).unwrap();
        let o = lex_order(&p, &["x", "y", "z"]).unwrap();
        assert_eq!(names(&p, &o.level(2)[..4]), ["x^2", "x*y", "x*z", "y^2"]);
        assert_eq!(names(&p, &o.level(2)[4..]), ["y*z", "z^2"]);
    }

    #[test]
    fn lex_y_first() {
        let p = construct::boxp(&[3, 2]);
        let o = lex_order(&p, &["y", "x"]).unwrap();
        assert_eq!(names(&p, o.level(1)), ["y", "x"]);
        assert!(lex_order(&p, &["y"]).is_err());
        assert!(lex_order(&construct::named_yz(), &["x"]).is_err());
    }

    #[test]
    fn twist_on_figure_heart() {
        let p = construct::heart(5, 2, 2, 5).unwrap();
        let o = twist_order(&p, 2).unwrap();
        assert_eq!(names(&p, o.level(3)), ["x*y^2", "y^3", "x^2*y", "x^3"]);
        let lex = lex_order(&p, &["y", "x"]).unwrap();
        for d in 0..2 {
            assert_eq!(o.level(d), lex.level(d));
        }
    }

    #[test]
    fn union_simplicial_two_boxes() {
        let b = construct::boxp(&[2, 2]);
        let lex = lex_order(&b, &["x", "y"]).unwrap();
        let u = construct::disjoint_union(&[b.clone(), b.clone()]);
        let o = union_simplicial_order(&u.poset, &u.provenance, &[lex.clone(), lex]).unwrap();
        let got: Vec<_> = o
            .level(1)
            .iter()
            .map(|&e| (u.provenance.origins[e].factor(), names(&b, &[u.provenance.origins[e].source()])[0].clone()))
            .collect();
        assert_eq!(got, [(1, "x".into()), (1, "y".into()), (0, "x".into()), (0, "y".into())]);
    }

    #[test]
    fn union_simplicial_wedge_of_paths() {
        let w = construct::wedge(&[construct::path(2), construct::path(2)]).unwrap();
        let ids = |p: &RankedPoset| id_order(p);
        let o = union_simplicial_order(&w.poset, &w.provenance, &[ids(&construct::path(2)), ids(&construct::path(2))])
            .unwrap();
        for d in 1..=2 {
            let l = o.level(d);
            assert_eq!(l.len(), 2);
            assert_eq!(w.provenance.origins[l[0]].factor(), 1);
        }
    }

    #[test]
    fn restriction() {
        let big = construct::boxp(&[3, 3]);
        let small = construct::boxp(&[2, 2]);
        let o = lex_order(&big, &["x", "y"]).unwrap();
        let emb: Vec<usize> = (0..small.len())
            .map(|i| (0..big.len()).find(|&j| big.label(j) == small.label(i)).unwrap())
            .collect();
        let r = restrict_order(&o, &small, &emb).unwrap();
        assert_eq!(r, lex_order(&small, &["x", "y"]).unwrap());
        let all: Vec<usize> = (0..big.len()).collect();
        assert_eq!(restrict_order(&o, &big, &all).unwrap(), o);
    }
}
