#![allow(dead_code)]

use std::collections::BTreeSet;

use macposet::{PosetSpec, RankedPoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random ranked poset with level sizes in `1..=max_width`; every element
/// above level 0 gets at least one lower cover.
pub fn random_poset(seed: u64, levels: usize, max_width: usize, max_total: usize) -> RankedPoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::new();
    let mut by_level: Vec<Vec<usize>> = Vec::new();
    for d in 0..levels {
        let w = rng.gen_range(1..=max_width).min(max_total.saturating_sub(ranks.len()).max(1));
        if ranks.len() + w > max_total {
            break;
        }
        by_level.push((ranks.len()..ranks.len() + w).collect());
        ranks.extend(std::iter::repeat_n(d, w));
    }
    let mut covers = BTreeSet::new();
    for d in 1..by_level.len() {
        for &b in &by_level[d] {
            let below = &by_level[d - 1];
            covers.insert((below[rng.gen_range(0..below.len())], b));
            for &a in below {
                if rng.gen_bool(0.35) {
                    covers.insert((a, b));
                }
            }
        }
    }
    RankedPoset::from_spec(PosetSpec {
        name: format!("random({seed})"),
        ranks,
        covers: covers.into_iter().collect(),
        labels: None,
    })
    .unwrap()
}

fn up_set(p: &RankedPoset, set: &[usize]) -> BTreeSet<usize> {
    set.iter().flat_map(|&e| p.up_covers(e).iter().copied()).collect()
}

/// Minimum upper-shadow size over all `q`-subsets of level `d`, by plain
/// subset enumeration.
pub fn brute_min_shadow(p: &RankedPoset, d: usize) -> Vec<usize> {
    let l = p.level(d);
    let mut min = vec![usize::MAX; l.len() + 1];
    for m in 0u32..1 << l.len() {
        let set: Vec<usize> = (0..l.len()).filter(|i| m >> i & 1 == 1).map(|i| l[i]).collect();
        let s = up_set(p, &set).len();
        min[set.len()] = min[set.len()].min(s);
    }
    min
}

/// Whether the per-level descending lists satisfy both Macaulay conditions,
/// checked with ordered sets only.
pub fn brute_is_macaulay(p: &RankedPoset, lists: &[Vec<usize>], mins: &[Vec<usize>]) -> bool {
    for d in 0..lists.len() {
        let next: &[usize] = lists.get(d + 1).map_or(&[], |v| v.as_slice());
        for q in 1..=lists[d].len() {
            let sh = up_set(p, &lists[d][..q]);
            if sh.len() != mins[d][q] {
                return false;
            }
            let pre: BTreeSet<usize> = next[..sh.len()].iter().copied().collect();
            if pre != sh {
                return false;
            }
        }
    }
    true
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut t in permutations(&rest) {
            t.insert(0, x);
            out.push(t);
        }
    }
    out
}

/// Every Macaulay order of `p`, as per-level descending lists, by trying all
/// tuples of per-level permutations.
pub fn brute_macaulay_orders(p: &RankedPoset) -> Vec<Vec<Vec<usize>>> {
    let mins: Vec<Vec<usize>> = (0..p.num_levels()).map(|d| brute_min_shadow(p, d)).collect();
    let perms: Vec<Vec<Vec<usize>>> = (0..p.num_levels()).map(|d| permutations(p.level(d))).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; perms.len()];
    loop {
        let lists: Vec<Vec<usize>> = idx.iter().zip(&perms).map(|(&i, ps)| ps[i].clone()).collect();
        if brute_is_macaulay(p, &lists, &mins) {
            out.push(lists);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < perms[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn permutation_count(p: &RankedPoset) -> u64 {
    p.level_sizes()
        .iter()
        .map(|&n| (1..=n as u64).product::<u64>())
        .product()
}

/// Like [`random_poset`], but every element below the top level also gets an
/// upper cover, so all maximal elements share the top rank.
pub fn random_graded_poset(seed: u64, levels: usize, max_width: usize, max_total: usize) -> RankedPoset {
    let p = random_poset(seed, levels, max_width, max_total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut spec = p.to_spec();
    let top = p.num_levels() - 1;
    for d in 0..top {
        for &a in p.level(d) {
            if p.up_covers(a).is_empty() {
                let above = p.level(d + 1);
                spec.covers.push((a, above[rng.gen_range(0..above.len())]));
            }
        }
    }
    spec.name = format!("graded({seed})");
    RankedPoset::from_spec(spec).unwrap()
}

/// Counts from checking the two-dimensional box shadow formulas against
/// plain set computations.
#[derive(Default, Debug)]
pub struct LemmaTally {
    pub monomials: usize,
    pub segments: usize,
    pub whole_levels: usize,
    pub failures: Vec<String>,
    /// Segments where the box-segment formula read literally is wrong.
    pub literal_misses: usize,
}

/// Checks the monomial, segment, new-shadow and box-segment formulas on
/// every segment of every level of the `a × b` box, under both lex orders.
pub fn check_box_lemmas(a: u32, b: u32, t: &mut LemmaTally) {
    use macposet::classify::lemmas::{
        box_segment_formula, box_segment_formula_literal, monomial_shadow_formula,
        new_shadow_formula, segment_shadow_formula, Orientation, SegmentClass,
    };
    let p = macposet::construct::boxp(&[a, b]);
    let exp = |e: usize| {
        let c = p.label(e).unwrap().coords();
        (c[0], c[1])
    };
    for e in 0..p.len() {
        let (m, n) = exp(e);
        t.monomials += 1;
        if p.up_covers(e).len() != monomial_shadow_formula(a, b, m, n) {
            t.failures.push(format!("{a}x{b}: |up(x^{m} y^{n})|"));
        }
    }
    for orient in [Orientation::XFirst, Orientation::YFirst] {
        for d in 0..p.num_levels() {
            let mut l = p.level(d).to_vec();
            l.sort_by_key(|&e| {
                let (m, n) = exp(e);
                std::cmp::Reverse(match orient {
                    Orientation::XFirst => (m, n),
                    Orientation::YFirst => (n, m),
                })
            });
            let len = l.len();
            for s in 0..len {
                for k in 1..=len - s {
                    let seg = &l[s..s + k];
                    let shadow = up_set(&p, seg);
                    let above = up_set(&p, &l[..s]);
                    let fresh = shadow.difference(&above).count();
                    let members: Vec<usize> = seg.iter().map(|&e| p.up_covers(e).len()).collect();
                    let tag = format!("{a}x{b} {orient:?} d={d} [{s},{})", s + k);
                    t.segments += 1;
                    if shadow.len() != segment_shadow_formula(&members) {
                        t.failures.push(format!("{tag}: segment formula"));
                    }
                    if fresh != new_shadow_formula(shadow.len(), s == 0) {
                        t.failures.push(format!("{tag}: new shadow formula"));
                    }
                    if k == len {
                        t.whole_levels += 1;
                        let want = (len + usize::from(d + 2 <= a as usize) + usize::from(d + 2 <= b as usize))
                            .saturating_sub(1);
                        if shadow.len() != want {
                            t.failures.push(format!("{tag}: whole level"));
                        }
                        continue;
                    }
                    let class = if s == 0 {
                        SegmentClass::Initial
                    } else if s + k == len {
                        SegmentClass::Final
                    } else {
                        SegmentClass::Neither
                    };
                    if shadow.len() != box_segment_formula(a, b, d as u32, k, class, orient) {
                        t.failures.push(format!("{tag}: box segment formula ({class:?})"));
                    }
                    if shadow.len() != box_segment_formula_literal(a, b, d as u32, k, class, orient) {
                        t.literal_misses += 1;
                    }
                }
            }
        }
    }
}
