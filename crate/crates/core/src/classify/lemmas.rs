//! Closed-form shadow sizes in two-dimensional boxes `K[x,y]/(x^a, y^b)`, and
//! the splitting inequality used for heart posets.

use serde::{Deserialize, Serialize};

use crate::construct::{boxp, disjoint_union};
use crate::error::{precondition, Result};
use crate::macaulay::initial_segment;
use crate::order::{lex_order, union_simplicial_order};
use crate::poset::{upper_shadow, LevelSubset};

/// `|∇(x^m y^n)|` in the `a × b` box.
pub fn monomial_shadow_formula(a: u32, b: u32, m: u32, n: u32) -> usize {
    if m + 1 < a && n + 1 < b {
        2
    } else if m + 1 == a && n + 1 == b {
        0
    } else {
        1
    }
}

/// `|∇S|` for a lex segment `S` from the shadow sizes of its members.
pub fn segment_shadow_formula(member_shadows: &[usize]) -> usize {
    (member_shadows.iter().sum::<usize>() + 1).saturating_sub(member_shadows.len())
}

/// `|∇_new S|` from `|∇S|`.
pub fn new_shadow_formula(shadow: usize, initial: bool) -> usize {
    if initial {
        shadow
    } else {
        shadow.saturating_sub(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentClass {
    Initial,
    Final,
    Neither,
}

/// Which variable the lex order ranks first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    XFirst,
    YFirst,
}

impl Orientation {
    pub fn priority(self) -> [&'static str; 2] {
        match self {
            Orientation::XFirst => ["x", "y"],
            Orientation::YFirst => ["y", "x"],
        }
    }
}

fn in_range(d: u32, hi: i64) -> bool {
    i64::from(d) <= hi
}

/// `|∇A|` for a segment of rank `d` that is not a whole level, as the box
/// segment formula reads when the initial/final exchange is keyed on the
/// orientation alone: an initial segment gains one element exactly when the
/// first variable can still be raised.
pub fn box_segment_formula(
    a: u32,
    b: u32,
    d: u32,
    len: usize,
    class: SegmentClass,
    orientation: Orientation,
) -> usize {
    let (first, second) = match orientation {
        Orientation::XFirst => (a, b),
        Orientation::YFirst => (b, a),
    };
    let grows = match class {
        SegmentClass::Initial => in_range(d, i64::from(first) - 2),
        SegmentClass::Final => in_range(d, i64::from(second) - 2),
        SegmentClass::Neither => true,
    };
    len + usize::from(grows)
}

/// The box segment formula with its case split read literally: the stated
/// ranges apply when `b >= a` with `x > y` or `a >= b` with `y > x`, and the
/// initial and final ranges are exchanged otherwise.
pub fn box_segment_formula_literal(
    a: u32,
    b: u32,
    d: u32,
    len: usize,
    class: SegmentClass,
    orientation: Orientation,
) -> usize {
    let stated = match orientation {
        Orientation::XFirst => b >= a,
        Orientation::YFirst => a >= b,
    };
    let (initial_hi, final_hi) = if stated {
        (i64::from(b) - 2, i64::from(a) - 2)
    } else {
        (i64::from(a) - 2, i64::from(b) - 2)
    };
    let grows = match class {
        SegmentClass::Initial => in_range(d, initial_hi),
        SegmentClass::Final => in_range(d, final_hi),
        SegmentClass::Neither => true,
    };
    len + usize::from(grows)
}

/// One failure of the heart splitting inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitFailure {
    pub level: usize,
    pub left: usize,
    pub right: usize,
    pub joint_shadow: usize,
    pub split_shadow: usize,
}

/// Whether `(a0, a1, b0, b1)` satisfies `a0 > b0`, `b1 > a1`, `a0 >= b1` and
/// `a0 + a1 >= b0 + b1`.
pub fn splitting_hypotheses(a0: u32, a1: u32, b0: u32, b1: u32) -> bool {
    a0 > b0 && b1 > a1 && a0 >= b1 && a0 + a1 >= b0 + b1
}

/// Checks `|∇Seg_d(q0+q1)| <= |∇Seg^P_d q0| + |∇Seg^Q_d q1|` on the disjoint
/// union of `P = box(a0, a1)` and `Q = box(b1, b0)`, both under lex `y > x`
/// and `Q` ranked above `P`, for every rank `d` in `[a1+b0-1, a0+a1-2]` and
/// every `(q0, q1)`.
pub fn check_splitting_inequality(a0: u32, a1: u32, b0: u32, b1: u32) -> Result<Vec<SplitFailure>> {
    if !splitting_hypotheses(a0, a1, b0, b1) || a1 == 0 || b0 == 0 {
        return Err(precondition(
            "check_splitting_inequality",
            "need a0 > b0, b1 > a1, a0 >= b1 and a0 + a1 >= b0 + b1",
        ));
    }
    let p = boxp(&[a0, a1]);
    let q = boxp(&[b1, b0]);
    let op = lex_order(&p, &["y", "x"])?;
    let oq = lex_order(&q, &["y", "x"])?;
    let m = disjoint_union(&[p.clone(), q.clone()]);
    let om = union_simplicial_order(&m.poset, &m.provenance, &[op.clone(), oq.clone()])?;
    let shadow = |poset, o, d, k| -> Result<usize> {
        let s: LevelSubset = initial_segment(poset, o, d, k)?;
        Ok(upper_shadow(poset, &s).len())
    };
    let mut out = Vec::new();
    let (lo, hi) = ((a1 + b0 - 1) as usize, (a0 + a1 - 2) as usize);
    for d in lo..=hi {
        let np = p.level(d).len();
        let nq = q.level(d).len();
        for q0 in 0..=np {
            for q1 in 0..=nq {
                let joint = shadow(&m.poset, &om, d, q0 + q1)?;
                let split = shadow(&p, &op, d, q0)? + shadow(&q, &oq, d, q1)?;
                if joint > split {
                    out.push(SplitFailure {
                        level: d,
                        left: q0,
                        right: q1,
                        joint_shadow: joint,
                        split_shadow: split,
                    });
                }
            }
        }
    }
    Ok(out)
}
