use super::{min_shadow_table, MinShadowTable, ShadowIndex, DEFAULT_LEVEL_CAP};
use crate::error::{Error, Result};
use crate::order::LevelOrderFamily;
use crate::poset::{upper_shadow, LevelSubset, RankedPoset};
use crate::verdict::{AdditivityClause, Verdict, Witness};

/// `Seg_d q`: the `q` largest elements of level `d`.
pub fn initial_segment(
    p: &RankedPoset,
    o: &LevelOrderFamily,
    d: usize,
    q: usize,
) -> Result<LevelSubset> {
    let l = o.level(d);
    if q > l.len() {
        return Err(Error::InvalidOrder(format!(
            "segment size {q} exceeds level {d} of size {}",
            l.len()
        )));
    }
    LevelSubset::from_elements(p, d, &l[..q])
}

/// Checks both Macaulay conditions for every level and every segment size,
/// scanning `(d, q)` in lexicographic order and reporting the first failure.
pub fn check_macaulay(p: &RankedPoset, o: &LevelOrderFamily) -> Result<Verdict> {
    o.check_against(p)?;
    let table = min_shadow_table(p, DEFAULT_LEVEL_CAP)?;
    check_macaulay_with_table(p, o, &table)
}

/// [`check_macaulay`] against a precomputed table.
pub fn check_macaulay_with_table(
    p: &RankedPoset,
    o: &LevelOrderFamily,
    table: &MinShadowTable,
) -> Result<Verdict> {
    o.check_against(p)?;
    let idx = ShadowIndex::new(p, 64)?;
    for d in 0..p.num_levels() {
        let list = o.level(d);
        let next = o.level(d + 1);
        let mut prefix = vec![0u64; next.len() + 1];
        for (k, &e) in next.iter().enumerate() {
            prefix[k + 1] = prefix[k] | 1u64 << p.position(e);
        }
        let mut s = 0u64;
        for q in 1..=list.len() {
            s |= idx.up[d][p.position(list[q - 1])];
            let size = s.count_ones() as usize;
            if size != table.entry(d, q) {
                return Ok(Verdict::Violation(Witness::MinShadowBeaten {
                    level: d,
                    size: q,
                    segment: list[..q].to_vec(),
                    segment_shadow: size,
                    set: table.minimizer(p, d, q),
                    set_shadow: table.entry(d, q),
                }));
            }
            if s != prefix[size] {
                let in_order = |m: u64| -> Vec<usize> {
                    next.iter()
                        .copied()
                        .filter(|&e| m >> p.position(e) & 1 == 1)
                        .collect()
                };
                return Ok(Verdict::Violation(Witness::ShadowNotInitial {
                    level: d,
                    size: q,
                    segment: list[..q].to_vec(),
                    shadow: in_order(s),
                    prefix: next[..size].to_vec(),
                }));
            }
        }
    }
    Ok(Verdict::Ok)
}

fn same_set(a: &[usize], b: &[usize]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

fn shadow_of(p: &RankedPoset, level: usize, elems: &[usize]) -> Option<LevelSubset> {
    LevelSubset::from_elements(p, level, elems)
        .ok()
        .map(|s| upper_shadow(p, &s))
}

/// Re-derives a witness from scratch with plain set operations; `true` when
/// the recorded violation really occurs in `(p, o)`.
pub fn replay_witness(p: &RankedPoset, o: &LevelOrderFamily, w: &Witness) -> bool {
    match w {
        Witness::InvalidPoset { .. } => !p.validate().is_ok(),
        Witness::MinShadowBeaten {
            level,
            size,
            segment,
            segment_shadow,
            set,
            set_shadow,
        } => {
            let l = o.level(*level);
            let (Some(a), Some(b)) = (shadow_of(p, *level, segment), shadow_of(p, *level, set))
            else {
                return false;
            };
            *size <= l.len()
                && segment == &l[..*size]
                && set.len() == *size
                && a.len() == *segment_shadow
                && b.len() == *set_shadow
                && set_shadow < segment_shadow
        }
        Witness::ShadowNotInitial {
            level,
            size,
            segment,
            shadow,
            prefix,
        } => {
            let l = o.level(*level);
            let next = o.level(level + 1);
            let Some(a) = shadow_of(p, *level, segment) else {
                return false;
            };
            *size <= l.len()
                && segment == &l[..*size]
                && same_set(&a.elements(p), shadow)
                && shadow.len() <= next.len()
                && prefix == &next[..shadow.len()]
                && !same_set(shadow, prefix)
        }
        Witness::SegmentInequality {
            level,
            start,
            len,
            clause,
            initial_new_shadow,
            segment_new_shadow,
            final_new_shadow,
        } => {
            let n = o.level(*level).len();
            if *len == 0 || start + len > n {
                return false;
            }
            let ns = |s: usize| super::new_shadow(p, o, *level, s, *len).map(|x| x.len());
            let (Ok(a), Ok(b), Ok(c)) = (ns(0), ns(*start), ns(n - len)) else {
                return false;
            };
            a == *initial_new_shadow
                && b == *segment_new_shadow
                && c == *final_new_shadow
                && match clause {
                    AdditivityClause::InitialBelowSegment => a < b,
                    AdditivityClause::SegmentBelowFinal => b < c,
                }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::monomial::{standard_monomial_poset, MonomialIdeal};
    use crate::order::{lex_order, twist_order};

    #[test]
    fn segment_edges() {
        let b = construct::boxp(&[3, 3]);
        let o = lex_order(&b, &["x", "y"]).unwrap();
        assert!(initial_segment(&b, &o, 2, 0).unwrap().is_empty());
        assert_eq!(initial_segment(&b, &o, 2, 3).unwrap().len(), 3);
        assert!(initial_segment(&b, &o, 2, 4).is_err());
    }

    #[test]
    fn boxes_with_lex() {
        let b = construct::boxp(&[2, 3, 4]);
        let o = lex_order(&b, &["x", "y", "z"]).unwrap();
        assert!(check_macaulay(&b, &o).unwrap().is_ok());
    }

    #[test]
    fn twist_heart_and_lex_failure() {
        let h = construct::heart(5, 2, 2, 5).unwrap();
        assert!(check_macaulay(&h, &twist_order(&h, 2).unwrap()).unwrap().is_ok());
        let i = MonomialIdeal::parse_generators(&["x", "y"], &["x^4", "y^3", "x^3*y"]).unwrap();
        let p = standard_monomial_poset(&i).unwrap();
        for pri in [["x", "y"], ["y", "x"]] {
            let o = lex_order(&p, &pri).unwrap();
            let v = check_macaulay(&p, &o).unwrap();
            let w = v.witness().expect("heart example is not Macaulay");
            assert!(replay_witness(&p, &o, w));
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let b = construct::boxp(&[2, 2]);
        let o = lex_order(&construct::boxp(&[2, 3]), &["x", "y"]).unwrap();
        assert!(check_macaulay(&b, &o).is_err());
    }
}
