//! The ranked-poset data model: elements are dense ids `0..n`, each with a
//! rank, and the order is given by its cover relation. Every cover must raise
//! the rank by exactly one. A unique minimum is *not* required; disjoint
//! unions and posets with their bottom removed are ordinary values here, and
//! the operations that need unique extremes check for them locally.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::monomial::ExponentVector;
use crate::verdict::{Verdict, Witness};

/// Exponent-vector labels for every element, over a shared variable list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub vars: Vec<String>,
    pub exps: Vec<ExponentVector>,
}

/// Unvalidated poset description: what a file or a caller hands us before
/// [`validate_poset`] has had a look.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PosetSpec {
    pub name: String,
    pub ranks: Vec<usize>,
    /// `(a, b)` means `b` covers `a`.
    pub covers: Vec<(usize, usize)>,
    pub labels: Option<Labels>,
}

/// A finite ranked poset, immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoset {
    name: String,
    ranks: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    levels: Vec<Vec<usize>>,
    level_pos: Vec<usize>,
    labels: Option<Labels>,
}

/// Checks the ranked-poset invariants on raw data. Returns the first
/// violation found, scanning label shape, then covers in input order.
pub fn validate_poset(spec: &PosetSpec) -> Verdict {
    let n = spec.ranks.len();
    let bad = |invariant: String, elements: Vec<usize>| {
        Verdict::Violation(Witness::InvalidPoset {
            invariant,
            elements,
        })
    };
    if let Some(labels) = &spec.labels {
        if labels.exps.len() != n {
            return bad(
                format!("{} labels for {} elements", labels.exps.len(), n),
                vec![],
            );
        }
        let arity = labels.vars.len();
        if let Some(e) = labels.exps.iter().position(|v| v.arity() != arity) {
            return bad(format!("label arity differs from {arity} variables"), vec![e]);
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(a, b) in &spec.covers {
        if a >= n || b >= n {
            return bad(format!("cover endpoint out of range 0..{n}"), vec![a, b]);
        }
        if a == b {
            return bad("self-cover".into(), vec![a]);
        }
        if !seen.insert((a, b)) {
            return bad("duplicate cover".into(), vec![a, b]);
        }
        let (ra, rb) = (spec.ranks[a], spec.ranks[b]);
        if rb != ra + 1 {
            let msg = if rb > ra {
                format!("cover raises rank by {}", rb - ra)
            } else {
                format!("cover lowers rank from {ra} to {rb}")
            };
            return bad(msg, vec![a, b]);
        }
    }
    Verdict::Ok
}

impl RankedPoset {
    /// Validates `spec` and builds the poset. Cover lists are sorted and levels
    /// list their elements in ascending id order.
    pub fn from_spec(spec: PosetSpec) -> Result<Self> {
        if let Verdict::Violation(w) = validate_poset(&spec) {
            let Witness::InvalidPoset {
                invariant,
                elements,
            } = w
            else {
                unreachable!()
            };
            return Err(Error::InvalidPoset(format!("{invariant} at {elements:?}")));
        }
        let n = spec.ranks.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &spec.covers {
            up[a].push(b);
            down[b].push(a);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        let top = spec.ranks.iter().copied().max();
        let mut levels = vec![Vec::new(); top.map_or(0, |t| t + 1)];
        let mut level_pos = vec![0; n];
        for (e, &r) in spec.ranks.iter().enumerate() {
            level_pos[e] = levels[r].len();
            levels[r].push(e);
        }
        Ok(RankedPoset {
            name: spec.name,
            ranks: spec.ranks,
            up,
            down,
            levels,
            level_pos,
            labels: spec.labels,
        })
    }

    pub fn to_spec(&self) -> PosetSpec {
        PosetSpec {
            name: self.name.clone(),
            ranks: self.ranks.clone(),
            covers: self.covers().collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Option<Labels>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.exps.len() != self.len() {
                return Err(Error::InvalidPoset(format!(
                    "{} labels for {} elements",
                    l.exps.len(),
                    self.len()
                )));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, e: usize) -> usize {
        self.ranks[e]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Largest rank of an element; `None` for the empty poset.
    pub fn max_rank(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    /// Number of rank slots, `max_rank + 1` (zero when empty).
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Elements of rank `d` in ascending id order (empty past the top).
    pub fn level(&self, d: usize) -> &[usize] {
        self.levels.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Position of `e` inside `level(rank(e))`.
    pub fn position(&self, e: usize) -> usize {
        self.level_pos[e]
    }

    pub fn up_covers(&self, e: usize) -> &[usize] {
        &self.up[e]
    }

    pub fn down_covers(&self, e: usize) -> &[usize] {
        &self.down[e]
    }

    /// All cover pairs `(a, b)` with `b` covering `a`, ordered by `a` then `b`.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    pub fn num_covers(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn label(&self, e: usize) -> Option<&ExponentVector> {
        self.labels.as_ref().map(|l| &l.exps[e])
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.down[e].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.up[e].is_empty()).collect()
    }

    /// Strict up-sets: `result[a]` holds every `b` with `a < b`.
    pub fn strict_upsets(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut out = vec![BitSet::new(n); n];
        for d in (0..self.num_levels()).rev() {
            for &a in self.level(d) {
                let mut s = BitSet::new(n);
                for &b in &self.up[a] {
                    s.insert(b);
                    s.union_with(&out[b]);
                }
                out[a] = s;
            }
        }
        out
    }

    /// `a <= b` in the partial order.
    pub fn le(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let target = self.ranks[b];
        let mut frontier = vec![a];
        let mut seen = BitSet::new(self.len());
        while let Some(x) = frontier.pop() {
            for &y in &self.up[x] {
                if y == b {
                    return true;
                }
                if self.ranks[y] < target && !seen.contains(y) {
                    seen.insert(y);
                    frontier.push(y);
                }
            }
        }
        false
    }

    /// Re-checks every invariant of an already-built poset.
    pub fn validate(&self) -> Verdict {
        let v = validate_poset(&self.to_spec());
        if !v.is_ok() {
            return v;
        }
        for a in 0..self.len() {
            for &b in &self.up[a] {
                if self.down[b].binary_search(&a).is_err() {
                    return Verdict::Violation(Witness::InvalidPoset {
                        invariant: "up and down covers are not inverse".into(),
                        elements: vec![a, b],
                    });
                }
            }
        }
        let downs: usize = self.down.iter().map(Vec::len).sum();
        if downs != self.num_covers() {
            return Verdict::Violation(Witness::InvalidPoset {
                invariant: "up and down covers are not inverse".into(),
                elements: vec![],
            });
        }
        for (d, level) in self.levels.iter().enumerate() {
            for (i, &e) in level.iter().enumerate() {
                if self.ranks[e] != d || self.level_pos[e] != i {
                    return Verdict::Violation(Witness::InvalidPoset {
                        invariant: "level index disagrees with ranks".into(),
                        elements: vec![e],
                    });
                }
            }
        }
        Verdict::Ok
    }
}

/// A set of same-rank elements, stored densely by level position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelSubset {
    level: usize,
    bits: BitSet,
}

impl LevelSubset {
    pub fn empty(p: &RankedPoset, level: usize) -> Self {
        LevelSubset {
            level,
            bits: BitSet::new(p.level(level).len()),
        }
    }

    pub fn full(p: &RankedPoset, level: usize) -> Self {
        LevelSubset {
            level,
            bits: BitSet::full(p.level(level).len()),
        }
    }

    /// Builds the subset from element ids, all of which must have rank `level`.
    pub fn from_elements(p: &RankedPoset, level: usize, elements: &[usize]) -> Result<Self> {
        let mut s = Self::empty(p, level);
        for &e in elements {
            if e >= p.len() || p.rank(e) != level {
                return Err(Error::InvalidPoset(format!(
                    "element {e} is not in level {level}"
                )));
            }
            s.bits.insert(p.position(e));
        }
        Ok(s)
    }

    pub(crate) fn from_bits(level: usize, bits: BitSet) -> Self {
        LevelSubset { level, bits }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, p: &RankedPoset, e: usize) -> bool {
        p.rank(e) == self.level && self.bits.contains(p.position(e))
    }

    pub fn insert(&mut self, p: &RankedPoset, e: usize) {
        assert_eq!(p.rank(e), self.level, "element {e} is not in level {}", self.level);
        self.bits.insert(p.position(e));
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        LevelSubset::from_bits(self.level, bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        LevelSubset::from_bits(self.level, bits)
    }

    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        LevelSubset::from_bits(self.level, bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.level == other.level && self.bits.is_subset(&other.bits)
    }

    /// Member ids in ascending level-position order.
    pub fn elements(&self, p: &RankedPoset) -> Vec<usize> {
        let level = p.level(self.level);
        self.bits.iter().map(|i| level[i]).collect()
    }
}

/// Elements covering some member of `a`, one level up. The empty set maps to
/// the empty set, also at the top rank.
pub fn upper_shadow(p: &RankedPoset, a: &LevelSubset) -> LevelSubset {
    let mut out = LevelSubset::empty(p, a.level + 1);
    for e in a.elements(p) {
        for &b in p.up_covers(e) {
            out.bits.insert(p.position(b));
        }
    }
    out
}

/// Elements covered by some member of `a`, one level down. For a subset of
/// level 0 the result is the empty subset of level 0.
pub fn lower_shadow(p: &RankedPoset, a: &LevelSubset) -> LevelSubset {
    let Some(below) = a.level.checked_sub(1) else {
        return LevelSubset::from_bits(0, BitSet::new(0));
    };
    let mut out = LevelSubset::empty(p, below);
    for e in a.elements(p) {
        for &b in p.down_covers(e) {
            out.bits.insert(p.position(b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::monomial::{standard_monomial_poset, MonomialIdeal};

    fn spec(ranks: Vec<usize>, covers: Vec<(usize, usize)>) -> PosetSpec {
        PosetSpec {
            name: "t".into(),
            ranks,
            covers,
            labels: None,
        }
    }

    #[test]
    fn path_validates() {
        let p = construct::path(2);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rank_skip_is_rejected() {
        let v = validate_poset(&spec(vec![0, 2], vec![(0, 1)]));
        match v {
            Verdict::Violation(Witness::InvalidPoset {
                invariant,
                elements,
            }) => {
                assert_eq!(invariant, "cover raises rank by 2");
                assert_eq!(elements, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(RankedPoset::from_spec(spec(vec![0, 2], vec![(0, 1)])).is_err());
    }

    #[test]
    fn self_cover_and_range() {
        assert!(!validate_poset(&spec(vec![0], vec![(0, 0)])).is_ok());
        assert!(!validate_poset(&spec(vec![0], vec![(0, 3)])).is_ok());
        assert!(!validate_poset(&spec(vec![0, 1], vec![(0, 1), (0, 1)])).is_ok());
    }

    #[test]
    fn box_validates() {
        assert!(construct::boxp(&[3, 4]).validate().is_ok());
    }

    /// Monomials of K[x,y] up to degree 4 stand in for the infinite lattice.
    fn truncated_plane() -> RankedPoset {
        let ideal = MonomialIdeal::parse_generators(&["x", "y"], &["x^5", "x^4*y", "x^3*y^2", "x^2*y^3", "x*y^4", "y^5"]).unwrap();
        standard_monomial_poset(&ideal).unwrap()
    }

    fn by_label(p: &RankedPoset, exps: &[[u32; 2]]) -> Vec<usize> {
        exps.iter()
            .map(|e| {
                (0..p.len())
                    .find(|&i| p.label(i).unwrap().coords() == e)
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn upper_shadow_of_xy_and_y2() {
        let p = truncated_plane();
        let a = LevelSubset::from_elements(&p, 2, &by_label(&p, &[[1, 1], [0, 2]])).unwrap();
        let sh = upper_shadow(&p, &a);
        let mut want = by_label(&p, &[[2, 1], [1, 2], [0, 3]]);
        want.sort();
        let mut got = sh.elements(&p);
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn lower_shadow_of_xy_and_x2() {
        let p = truncated_plane();
        let a = LevelSubset::from_elements(&p, 2, &by_label(&p, &[[1, 1], [2, 0]])).unwrap();
        let mut got = lower_shadow(&p, &a).elements(&p);
        got.sort();
        let mut want = by_label(&p, &[[1, 0], [0, 1]]);
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_and_extreme_shadows() {
        let b = construct::boxp(&[3, 4]);
        let top = b.maximal_elements();
        assert_eq!(top.len(), 1);
        let t = LevelSubset::from_elements(&b, 5, &top).unwrap();
        assert!(upper_shadow(&b, &t).is_empty());
        assert!(upper_shadow(&b, &LevelSubset::empty(&b, 2)).is_empty());
        assert!(lower_shadow(&b, &LevelSubset::empty(&b, 2)).is_empty());
        let bottom = LevelSubset::from_elements(&b, 0, &[b.level(0)[0]]).unwrap();
        assert!(lower_shadow(&b, &bottom).is_empty());
    }

    #[test]
    fn order_relation() {
        let b = construct::boxp(&[2, 3]);
        let bottom = b.level(0)[0];
        let top = b.maximal_elements()[0];
        assert!(b.le(bottom, top));
        assert!(!b.le(top, bottom));
        let ups = b.strict_upsets();
        assert_eq!(ups[bottom].count(), b.len() - 1);
    }
}
