use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ShadowIndex;
use crate::error::Result;
use crate::poset::RankedPoset;

/// Minimum upper-shadow sizes of one level, per cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTable {
    /// `min[q]` is the least `|∇A|` over `A` of size `q`.
    pub min: Vec<usize>,
    /// For each `q`, the smallest mask (as an integer) achieving `min[q]`.
    pub argmin: Vec<u64>,
}

/// The right-hand side of the first Macaulay condition, for every level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinShadowTable {
    pub levels: Vec<LevelTable>,
}

impl MinShadowTable {
    pub fn entry(&self, d: usize, q: usize) -> usize {
        self.levels[d].min[q]
    }

    /// Element ids of the canonical minimizing set of size `q` in level `d`.
    pub fn minimizer(&self, p: &RankedPoset, d: usize, q: usize) -> Vec<usize> {
        super::bits(self.levels[d].argmin[q])
            .map(|i| p.level(d)[i])
            .collect()
    }
}

/// Exact minimum shadow sizes by exhaustive enumeration of every subset of
/// every level. Levels larger than `level_cap` are refused.
pub fn min_shadow_table(p: &RankedPoset, level_cap: usize) -> Result<MinShadowTable> {
    let idx = ShadowIndex::new(p, level_cap)?;
    let levels = (0..p.num_levels())
        .into_par_iter()
        .map(|d| level_table(&idx.up[d]))
        .collect();
    Ok(MinShadowTable { levels })
}

const SPLIT_BITS: usize = 6;

fn level_table(up: &[u64]) -> LevelTable {
    let n = up.len();
    // seed with prefixes of the level
    let mut seed_min = vec![0usize; n + 1];
    let mut seed_arg = vec![0u64; n + 1];
    let mut s = 0u64;
    for q in 1..=n {
        s |= up[q - 1];
        seed_min[q] = s.count_ones() as usize;
        seed_arg[q] = u64::MAX >> (64 - q);
    }
    if up.iter().all(|&m| m == 0) {
        return LevelTable {
            min: seed_min,
            argmin: seed_arg,
        };
    }
    let best: Vec<AtomicUsize> = seed_min.iter().map(|&v| AtomicUsize::new(v)).collect();
    let split = SPLIT_BITS.min(n);
    let locals: Vec<(Vec<usize>, Vec<u64>)> = (0u64..1 << split)
        .into_par_iter()
        .map(|head| {
            let mut lmin = vec![usize::MAX; n + 1];
            let mut larg = vec![u64::MAX; n + 1];
            let shadow = super::bits(head).fold(0, |m, i| m | up[i]);
            let mut st = Dfs {
                up,
                best: &best,
                lmin: &mut lmin,
                larg: &mut larg,
            };
            st.go(split, head, shadow, head.count_ones() as usize);
            (lmin, larg)
        })
        .collect();
    let mut min = seed_min;
    let mut argmin = seed_arg;
    for (lmin, larg) in locals {
        for q in 0..=n {
            if (lmin[q], larg[q]) < (min[q], argmin[q]) {
                min[q] = lmin[q];
                argmin[q] = larg[q];
            }
        }
    }
    LevelTable { min, argmin }
}

struct Dfs<'a> {
    up: &'a [u64],
    best: &'a [AtomicUsize],
    lmin: &'a mut [usize],
    larg: &'a mut [u64],
}

impl Dfs<'_> {
    fn go(&mut self, i: usize, set: u64, shadow: u64, k: usize) {
        let pop = shadow.count_ones() as usize;
        let n = self.up.len();
        // every completion has size in k..=k+(n-i) and shadow at least `pop`
        let bound = self.best[k..=k + (n - i)]
            .iter()
            .map(|b| b.load(Ordering::Relaxed))
            .max()
            .unwrap_or(0);
        if pop > bound {
            return;
        }
        if i == n {
            if (pop, set) < (self.lmin[k], self.larg[k]) {
                self.lmin[k] = pop;
                self.larg[k] = set;
                self.best[k].fetch_min(pop, Ordering::Relaxed);
            }
            return;
        }
        self.go(i + 1, set | 1 << i, shadow | self.up[i], k + 1);
        self.go(i + 1, set, shadow, k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn brute(up: &[u64]) -> LevelTable {
        let n = up.len();
        let mut min = vec![usize::MAX; n + 1];
        let mut argmin = vec![0; n + 1];
        for set in 0u64..1 << n {
            let sh = super::super::bits(set).fold(0, |m, i| m | up[i]).count_ones() as usize;
            let k = set.count_ones() as usize;
            if sh < min[k] {
                min[k] = sh;
                argmin[k] = set;
            }
        }
        LevelTable { min, argmin }
    }

    #[test]
    fn two_by_two_box() {
        let b = construct::boxp(&[2, 2]);
        let t = min_shadow_table(&b, 24).unwrap();
        assert_eq!(t.levels[1].min, [0, 1, 1]);
        assert_eq!(t.levels[2].min, [0, 0]);
        let p = construct::path(3);
        let t = min_shadow_table(&p, 24).unwrap();
        for d in 0..3 {
            assert_eq!(t.entry(d, 1), 1);
        }
    }

    #[test]
    fn agrees_with_plain_enumeration() {
        for p in [
            construct::boxp(&[3, 3, 3]),
            construct::heart(5, 2, 2, 5).unwrap(),
            construct::cartesian_product(&construct::named_yz(), &construct::path(2)).poset,
        ] {
            let idx = ShadowIndex::new(&p, 24).unwrap();
            let t = min_shadow_table(&p, 24).unwrap();
            for d in 0..p.num_levels() {
                assert_eq!(t.levels[d], brute(&idx.up[d]), "{} level {d}", p.name());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let b = construct::boxp(&[4, 4, 4]);
        assert!(min_shadow_table(&b, 8).is_err());
    }
}
