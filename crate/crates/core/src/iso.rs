//! Isomorphism of ranked posets: joint color refinement on both cover graphs,
//! then backtracking over same-color candidates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::poset::RankedPoset;

/// `mapping[a]` is the image in the target of element `a` of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetIso {
    pub mapping: Vec<usize>,
}

impl PosetIso {
    pub fn identity(n: usize) -> Self {
        PosetIso {
            mapping: (0..n).collect(),
        }
    }

    /// Is this a rank- and cover-preserving bijection from `p` onto `q`?
    pub fn validate(&self, p: &RankedPoset, q: &RankedPoset) -> bool {
        let n = p.len();
        if q.len() != n || self.mapping.len() != n || p.num_covers() != q.num_covers() {
            return false;
        }
        let mut hit = vec![false; n];
        for &m in &self.mapping {
            if m >= n || std::mem::replace(&mut hit[m], true) {
                return false;
            }
        }
        (0..n).all(|a| p.rank(a) == q.rank(self.mapping[a]))
            && p.covers()
                .all(|(a, b)| q.up_covers(self.mapping[a]).binary_search(&self.mapping[b]).is_ok())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (a, &b) in self.mapping.iter().enumerate() {
            inv[b] = a;
        }
        PosetIso { mapping: inv }
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        PosetIso {
            mapping: self.mapping.iter().map(|&b| other.mapping[b]).collect(),
        }
    }
}

fn refine(p: &RankedPoset, q: &RankedPoset) -> (Vec<u32>, Vec<u32>) {
    let np = p.len();
    let graphs = [p, q];
    let elem = |k: usize| if k < np { (0, k) } else { (1, k - np) };
    let total = np + q.len();
    let mut color: Vec<u32> = {
        let sigs: Vec<_> = (0..total)
            .map(|k| {
                let (g, e) = elem(k);
                let x = graphs[g];
                (x.rank(e), x.up_covers(e).len(), x.down_covers(e).len())
            })
            .collect();
        canon(&sigs)
    };
    let mut classes = count_classes(&color);
    loop {
        let sigs: Vec<_> = (0..total)
            .map(|k| {
                let (g, e) = elem(k);
                let x = graphs[g];
                let off = if g == 0 { 0 } else { np };
                let mut up: Vec<u32> = x.up_covers(e).iter().map(|&b| color[b + off]).collect();
                let mut down: Vec<u32> =
                    x.down_covers(e).iter().map(|&b| color[b + off]).collect();
                up.sort_unstable();
                down.sort_unstable();
                (color[k], up, down)
            })
            .collect();
        let next = canon(&sigs);
        let c = count_classes(&next);
        color = next;
        if c == classes {
            break;
        }
        classes = c;
    }
    let cq = color.split_off(np);
    (color, cq)
}

fn canon<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let ids: BTreeMap<&T, u32> = {
        let mut m = BTreeMap::new();
        for s in sigs {
            m.insert(s, 0);
        }
        for (i, v) in m.values_mut().enumerate() {
            *v = i as u32;
        }
        m
    };
    sigs.iter().map(|s| ids[s]).collect()
}

fn count_classes(c: &[u32]) -> usize {
    c.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Finds an isomorphism `p → q` if one exists. Deterministic.
pub fn are_isomorphic(p: &RankedPoset, q: &RankedPoset) -> Option<PosetIso> {
    if p.len() != q.len() || p.level_sizes() != q.level_sizes() || p.num_covers() != q.num_covers()
    {
        return None;
    }
    let (cp, cq) = refine(p, q);
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    // Visit elements so that each one (after the first of its component) has
    // an already-placed neighbor: BFS over the cover graph.
    let n = p.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let e = order[head];
            head += 1;
            for &f in p.up_covers(e).iter().chain(p.down_covers(e)) {
                if !seen[f] {
                    seen[f] = true;
                    order.push(f);
                }
            }
        }
    }
    let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (e, &c) in cq.iter().enumerate() {
        by_color.entry(c).or_default().push(e);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut pre = vec![usize::MAX; n];
    if place(p, q, &order, 0, &cp, &by_color, &mut map, &mut used, &mut pre) {
        Some(PosetIso { mapping: map })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn place(
    p: &RankedPoset,
    q: &RankedPoset,
    order: &[usize],
    k: usize,
    cp: &[u32],
    by_color: &BTreeMap<u32, Vec<usize>>,
    map: &mut [usize],
    used: &mut [bool],
    pre: &mut [usize],
) -> bool {
    let Some(&e) = order.get(k) else {
        return true;
    };
    for &c in &by_color[&cp[e]] {
        if used[c] || !consistent(p, q, e, c, map, pre) {
            continue;
        }
        map[e] = c;
        used[c] = true;
        pre[c] = e;
        if place(p, q, order, k + 1, cp, by_color, map, used, pre) {
            return true;
        }
        map[e] = usize::MAX;
        used[c] = false;
        pre[c] = usize::MAX;
    }
    false
}

fn consistent(p: &RankedPoset, q: &RankedPoset, e: usize, c: usize, map: &[usize], pre: &[usize]) -> bool {
    let side = |pe: &[usize], qc: &[usize]| {
        let mut placed = 0;
        for &f in pe {
            if map[f] != usize::MAX {
                placed += 1;
                if qc.binary_search(&map[f]).is_err() {
                    return false;
                }
            }
        }
        qc.iter().filter(|&&g| pre[g] != usize::MAX).count() == placed
    };
    side(p.up_covers(e), q.up_covers(c)) && side(p.down_covers(e), q.down_covers(c))
}
