//! Decision procedures for the Macaulay and additivity properties.
//!
//! Within a level, subsets are `u64` masks over level positions (the index of
//! an element in [`RankedPoset::level`]), so every level handled here must have
//! at most 64 elements; the enumeration cap is tighter (see
//! [`DEFAULT_LEVEL_CAP`]).

mod additive;
mod check;
mod search;
mod table;

pub use additive::{is_additive, new_shadow};
pub use check::{check_macaulay, check_macaulay_with_table, initial_segment, replay_witness};
pub use search::{find_macaulay_order, SearchOptions, SearchOutcome, SearchReport, SearchStats};
pub use table::{min_shadow_table, LevelTable, MinShadowTable};

use crate::error::{Error, Result};
use crate::poset::RankedPoset;

/// Largest level size [`min_shadow_table`] enumerates by default.
pub const DEFAULT_LEVEL_CAP: usize = 24;

/// Upper-cover masks: `up[d][i]` is the set of level-`d+1` positions covering
/// position `i` of level `d`.
#[derive(Clone, Debug)]
pub(crate) struct ShadowIndex {
    pub up: Vec<Vec<u64>>,
}

impl ShadowIndex {
    pub fn new(p: &RankedPoset, cap: usize) -> Result<Self> {
        let cap = cap.min(64);
        for d in 0..p.num_levels() {
            let size = p.level(d).len();
            if size > cap {
                return Err(Error::LevelTooLarge { level: d, size, cap });
            }
        }
        let up = (0..p.num_levels())
            .map(|d| {
                p.level(d)
                    .iter()
                    .map(|&e| {
                        p.up_covers(e)
                            .iter()
                            .fold(0u64, |m, &b| m | 1u64 << p.position(b))
                    })
                    .collect()
            })
            .collect();
        Ok(ShadowIndex { up })
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}
