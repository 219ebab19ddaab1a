//! Exhaustive search for a Macaulay order.
//!
//! Orders are built level by level. When level `d` is listed as `L`, the
//! second condition forces the shadows `∇L[..1] ⊆ ∇L[..2] ⊆ ...` to be prefixes
//! of level `d+1`, so level `d+1` must list the successive differences of
//! those shadows as consecutive blocks, followed by the elements outside
//! `∇(level d)`. The state handed from one level to the next is therefore an
//! ordered partition of the level into blocks; a level order is admissible
//! when it lists the blocks in order, and every prefix must meet the minimum
//! shadow table. Partitions already known to fail are memoized per level.
//!
//! The search descends serially until the first level whose admissible orders
//! induce at least two distinct child partitions, then explores those children
//! as independent branches in parallel, each with its own memo. Branch costs
//! are combined in branch order, so the outcome, the order found and the
//! statistics do not depend on the number of threads.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bits, check_macaulay_with_table, min_shadow_table, MinShadowTable, ShadowIndex};
use crate::error::Result;
use crate::order::{order_from_lists, LevelOrderFamily};
use crate::poset::RankedPoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes (level-order extensions); `None` is
    /// unlimited.
    pub budget: Option<u64>,
    pub level_cap: usize,
    /// Only try interchangeable elements (same up and down covers, same
    /// block) in ascending position order.
    pub twin_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            level_cap: super::DEFAULT_LEVEL_CAP,
            twin_pruning: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "order", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found(LevelOrderFamily),
    NoOrder,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn order(&self) -> Option<&LevelOrderFamily> {
        match self {
            SearchOutcome::Found(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Level-order extensions tried.
    pub nodes: u64,
    /// Distinct `(level, partition)` states expanded.
    pub partitions: u64,
    /// States skipped because they were already known to fail or already
    /// visited.
    pub memo_hits: u64,
    /// Independent branches at the split level (0 when the search never
    /// split).
    pub branches: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.partitions += o.partitions;
        self.memo_hits += o.memo_hits;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

enum Stop {
    Budget,
    Cancelled,
}

type Lists = Vec<Vec<usize>>;

struct Ctx<'a> {
    idx: &'a ShadowIndex,
    table: &'a MinShadowTable,
    twins: Option<&'a [Vec<u64>]>,
    level_full: &'a [u64],
    failed: Vec<HashSet<Vec<u64>>>,
    stats: SearchStats,
    limit: u64,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

/// Partial enumeration of one level's admissible orders.
struct Walk<'w> {
    d: usize,
    blocks: &'w [u64],
    order: Vec<usize>,
    partial: Vec<u64>,
    visited: HashSet<(u64, Vec<u64>)>,
    seen: HashSet<Vec<u64>>,
    collect: Option<Vec<(Vec<u64>, Vec<usize>)>>,
}

impl Ctx<'_> {
    fn top(&self) -> usize {
        self.idx.up.len() - 1
    }

    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.limit {
            return Err(Stop::Budget);
        }
        if let Some((flag, me)) = self.cancel {
            if self.stats.nodes.is_multiple_of(1024) && flag.load(Ordering::Relaxed) < me {
                return Err(Stop::Cancelled);
            }
        }
        Ok(())
    }

    fn top_lists(blocks: &[u64]) -> Lists {
        vec![blocks.iter().flat_map(|&b| bits(b)).collect()]
    }

    /// Orders levels `d..=top` starting from partition `blocks` of level `d`.
    fn solve(&mut self, d: usize, blocks: Vec<u64>) -> std::result::Result<Option<Lists>, Stop> {
        if d == self.top() {
            return Ok(Some(Self::top_lists(&blocks)));
        }
        if self.failed[d].contains(&blocks) {
            self.stats.memo_hits += 1;
            return Ok(None);
        }
        self.stats.partitions += 1;
        let mut w = Walk {
            d,
            blocks: &blocks,
            order: Vec::new(),
            partial: Vec::new(),
            visited: HashSet::new(),
            seen: HashSet::new(),
            collect: None,
        };
        let r = self.walk(&mut w, 0, 0)?;
        if r.is_none() {
            self.failed[d].insert(blocks.clone());
        }
        Ok(r)
    }

    /// Distinct child partitions of `(d, blocks)` with one level order
    /// inducing each, in discovery order.
    fn children(
        &mut self,
        d: usize,
        blocks: &[u64],
    ) -> std::result::Result<Vec<(Vec<u64>, Vec<usize>)>, Stop> {
        self.stats.partitions += 1;
        let mut w = Walk {
            d,
            blocks,
            order: Vec::new(),
            partial: Vec::new(),
            visited: HashSet::new(),
            seen: HashSet::new(),
            collect: Some(Vec::new()),
        };
        self.walk(&mut w, 0, 0)?;
        Ok(w.collect.unwrap_or_default())
    }

    fn walk(&mut self, w: &mut Walk, chosen: u64, s: u64) -> std::result::Result<Option<Lists>, Stop> {
        let d = w.d;
        let q = w.order.len();
        let Some(&block) = w.blocks.iter().find(|&&b| b & !chosen != 0) else {
            let rest = self.level_full[d + 1] & !self.idx_full_shadow(d);
            let mut child = w.partial.clone();
            if rest != 0 {
                child.push(rest);
            }
            if !w.seen.insert(child.clone()) {
                self.stats.memo_hits += 1;
                return Ok(None);
            }
            if let Some(c) = &mut w.collect {
                c.push((child, w.order.clone()));
                return Ok(None);
            }
            return Ok(self.solve(d + 1, child)?.map(|mut rest| {
                rest.insert(0, w.order.clone());
                rest
            }));
        };
        if !w.visited.insert((chosen, w.partial.clone())) {
            self.stats.memo_hits += 1;
            return Ok(None);
        }
        let avail = block & !chosen;
        let want = self.table.entry(d, q + 1);
        for e in bits(avail) {
            if let Some(tw) = self.twins {
                if tw[d][e] & avail != 0 {
                    continue;
                }
            }
            let ns = s | self.idx.up[d][e];
            if ns.count_ones() as usize != want {
                continue;
            }
            self.tick()?;
            let diff = ns & !s;
            if diff != 0 {
                w.partial.push(diff);
            }
            w.order.push(e);
            let r = self.walk(w, chosen | 1 << e, ns)?;
            w.order.pop();
            if diff != 0 {
                w.partial.pop();
            }
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    fn idx_full_shadow(&self, d: usize) -> u64 {
        self.idx.up[d].iter().fold(0, |m, &x| m | x)
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn twin_masks(p: &RankedPoset) -> Vec<Vec<u64>> {
    (0..p.num_levels())
        .map(|d| {
            let l = p.level(d);
            (0..l.len())
                .map(|i| {
                    let a = l[i];
                    (0..i)
                        .filter(|&j| {
                            p.up_covers(l[j]) == p.up_covers(a)
                                && p.down_covers(l[j]) == p.down_covers(a)
                        })
                        .fold(0u64, |m, j| m | 1 << j)
                })
                .collect()
        })
        .collect()
}

/// Searches for a within-level order making `p` Macaulay. A found order is
/// re-verified with [`check_macaulay_with_table`] before it is returned.
pub fn find_macaulay_order(p: &RankedPoset, opts: &SearchOptions) -> Result<SearchReport> {
    let table = min_shadow_table(p, opts.level_cap)?;
    let idx = ShadowIndex::new(p, opts.level_cap)?;
    if p.is_empty() {
        return Ok(SearchReport {
            outcome: SearchOutcome::Found(order_from_lists(p, vec![])?),
            stats: SearchStats::default(),
        });
    }
    let level_full: Vec<u64> = (0..=p.num_levels())
        .map(|d| full_mask(p.level(d).len()))
        .collect();
    let twins = opts.twin_pruning.then(|| twin_masks(p));
    let budget = opts.budget.unwrap_or(u64::MAX);
    let stop_at = AtomicUsize::new(usize::MAX);
    let new_ctx = |limit: u64, cancel| Ctx {
        idx: &idx,
        table: &table,
        twins: twins.as_deref(),
        level_full: &level_full,
        failed: vec![HashSet::new(); p.num_levels()],
        stats: SearchStats::default(),
        limit,
        cancel,
    };

    let mut ctx = new_ctx(budget, None);
    let mut prefix: Lists = Vec::new();
    let mut d = 0;
    let mut blocks = if level_full[0] != 0 { vec![level_full[0]] } else { vec![] };
    let top = p.num_levels() - 1;
    let lists: Option<Lists> = loop {
        if d == top {
            prefix.extend(Ctx::top_lists(&blocks));
            break Some(prefix);
        }
        let kids = match ctx.children(d, &blocks) {
            Ok(k) => k,
            Err(_) => return Ok(exceeded(ctx.stats)),
        };
        match kids.len() {
            0 => break None,
            1 => {
                let (child, order) = kids.into_iter().next().expect("one child");
                prefix.push(order);
                blocks = child;
                d += 1;
            }
            n => {
                let mut stats = ctx.stats;
                stats.branches = n as u64;
                let spent = stats.nodes;
                let limit = budget - spent;
                let results: Vec<(Option<std::result::Result<Option<Lists>, Stop>>, SearchStats)> = kids
                    .par_iter()
                    .enumerate()
                    .map(|(i, (child, _))| {
                        if stop_at.load(Ordering::Relaxed) < i {
                            return (None, SearchStats::default());
                        }
                        let mut c = new_ctx(limit, Some((&stop_at, i)));
                        let r = c.solve(d + 1, child.clone());
                        if matches!(r, Ok(Some(_)) | Err(Stop::Budget)) {
                            stop_at.fetch_min(i, Ordering::Relaxed);
                        }
                        (Some(r), c.stats)
                    })
                    .collect();
                let mut found = None;
                for (i, (r, s)) in results.into_iter().enumerate() {
                    stats.add(&s);
                    let r = r.unwrap_or_else(|| panic!("branch {i} skipped before a decision"));
                    if stats.nodes > budget {
                        return Ok(exceeded(stats));
                    }
                    match r {
                        Ok(Some(rest)) => {
                            prefix.push(kids[i].1.clone());
                            prefix.extend(rest);
                            found = Some(prefix);
                            break;
                        }
                        Ok(None) => {}
                        Err(Stop::Budget) => return Ok(exceeded(stats)),
                        Err(Stop::Cancelled) => panic!("branch {i} cancelled before a decision"),
                    }
                }
                ctx.stats = stats;
                break found;
            }
        }
    };
    let stats = ctx.stats;
    let Some(lists) = lists else {
        return Ok(SearchReport {
            outcome: SearchOutcome::NoOrder,
            stats,
        });
    };
    let ids = lists
        .into_iter()
        .enumerate()
        .map(|(d, l)| l.into_iter().map(|i| p.level(d)[i]).collect())
        .collect();
    let order = order_from_lists(p, ids)?;
    let v = check_macaulay_with_table(p, &order, &table)?;
    assert!(v.is_ok(), "search produced an order that fails re-verification: {v:?}");
    Ok(SearchReport {
        outcome: SearchOutcome::Found(order),
        stats,
    })
}

fn exceeded(stats: SearchStats) -> SearchReport {
    SearchReport {
        outcome: SearchOutcome::BudgetExceeded,
        stats,
    }
}
