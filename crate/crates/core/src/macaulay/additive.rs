use super::{check_macaulay, ShadowIndex};
use crate::error::{Error, Result};
use crate::order::LevelOrderFamily;
use crate::poset::{LevelSubset, RankedPoset};
use crate::verdict::{AdditivityClause, Verdict, Witness};
use crate::bitset::BitSet;

/// New shadow of the segment `[start, start + len)` of level `d`'s
/// descending list: its upper shadow minus the shadow of everything above it.
pub fn new_shadow(
    p: &RankedPoset,
    o: &LevelOrderFamily,
    d: usize,
    start: usize,
    len: usize,
) -> Result<LevelSubset> {
    let l = o.level(d);
    if start + len > l.len() {
        return Err(Error::InvalidOrder(format!(
            "segment [{start}, {}) exceeds level {d} of size {}",
            start + len,
            l.len()
        )));
    }
    let next = p.level(d + 1).len();
    let shadow = |elems: &[usize]| {
        let mut b = BitSet::new(next);
        for &e in elems {
            for &u in p.up_covers(e) {
                b.insert(p.position(u));
            }
        }
        b
    };
    let mut seg = shadow(&l[start..start + len]);
    seg.difference_with(&shadow(&l[..start]));
    Ok(LevelSubset::from_bits(d + 1, seg))
}

/// Checks the additivity inequalities `|new A| >= |new B| >= |new C|` for
/// every level, every size `q` and every segment `B` of size `q`, with `A` and
/// `C` the initial and final segments of that size. The first failure in
/// `(level, q, start)` order is returned.
pub fn is_additive(p: &RankedPoset, o: &LevelOrderFamily) -> Result<Verdict> {
    if let Some(w) = check_macaulay(p, o)?.witness() {
        return Err(Error::NotMacaulay(format!(
            "additivity needs a Macaulay order; this one fails: {}",
            serde_json::to_string(w).unwrap_or_default()
        )));
    }
    let idx = ShadowIndex::new(p, 64)?;
    for d in 0..p.num_levels() {
        let up: Vec<u64> = o.level(d).iter().map(|&e| idx.up[d][p.position(e)]).collect();
        let n = up.len();
        let mut above = vec![0u64; n + 1];
        for k in 0..n {
            above[k + 1] = above[k] | up[k];
        }
        let fresh = |start: usize, len: usize| -> usize {
            let seg = up[start..start + len].iter().fold(0u64, |m, &x| m | x);
            (seg & !above[start]).count_ones() as usize
        };
        for q in 1..=n {
            let a = fresh(0, q);
            let c = fresh(n - q, q);
            for start in 0..=n - q {
                let b = fresh(start, q);
                let clause = if a < b {
                    AdditivityClause::InitialBelowSegment
                } else if b < c {
                    AdditivityClause::SegmentBelowFinal
                } else {
                    continue;
                };
                return Ok(Verdict::Violation(Witness::SegmentInequality {
                    level: d,
                    start,
                    len: q,
                    clause,
                    initial_new_shadow: a,
                    segment_new_shadow: b,
                    final_new_shadow: c,
                }));
            }
        }
    }
    Ok(Verdict::Ok)
}
