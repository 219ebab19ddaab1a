use serde::{Deserialize, Serialize};

/// Outcome of a validation, Macaulay or additivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Violation(Witness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(w) => Some(w),
        }
    }
}

/// Which inequality of the additivity definition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdditivityClause {
    /// The initial segment's new shadow is smaller than the segment's.
    InitialBelowSegment,
    /// The segment's new shadow is smaller than the final segment's.
    SegmentBelowFinal,
}

/// Evidence attached to a violation. Every variant can be replayed against
/// the poset (see [`crate::macaulay::replay_witness`]).
///
/// Element lists hold element ids; `level` is a rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    InvalidPoset {
        invariant: String,
        elements: Vec<usize>,
    },
    /// Some set of the same size has a strictly smaller upper shadow than
    /// the initial segment.
    MinShadowBeaten {
        level: usize,
        size: usize,
        segment: Vec<usize>,
        segment_shadow: usize,
        set: Vec<usize>,
        set_shadow: usize,
    },
    /// The upper shadow of an initial segment is not a prefix of the next
    /// level's order.
    ShadowNotInitial {
        level: usize,
        size: usize,
        segment: Vec<usize>,
        shadow: Vec<usize>,
        prefix: Vec<usize>,
    },
    /// A contiguous segment `[start, start + len)` of the descending level
    /// list breaks one of the two additivity inequalities.
    SegmentInequality {
        level: usize,
        start: usize,
        len: usize,
        clause: AdditivityClause,
        initial_new_shadow: usize,
        segment_new_shadow: usize,
        final_new_shadow: usize,
    },
}
