//! Closed-form answers for the box, wedge, diamond and heart families.

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::order::{lex_order, twist_order_with, LevelOrderFamily};
use crate::poset::RankedPoset;

fn heart_args(a0: u32, a1: u32, b0: u32, b1: u32) -> Result<()> {
    if [a0, a1, b0, b1].contains(&0) {
        return Err(precondition("heart", "side lengths must be >= 1"));
    }
    Ok(())
}

/// Whether the heart poset `heart(a0,a1,b0,b1)` is Macaulay, by the
/// classification's four cases, transcribed literally.
pub fn heart_predicate(a0: u32, a1: u32, b0: u32, b1: u32) -> Result<bool> {
    heart_args(a0, a1, b0, b1)?;
    let mixed = |a0: u32, a1: u32, b0: u32, b1: u32| {
        b0 < a0
            && a1 < b1
            && (a0 == b1 || (b1 < a0 && b1 + b0 <= a0 + a1) || (a0 < b1 && a0 + a1 <= b0 + b1))
    };
    Ok((a0 <= b0 && a1 <= b1)
        || (b0 <= a0 && b1 <= a1)
        || mixed(a0, a1, b0, b1)
        || mixed(b0, b1, a0, a1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HeartOrder {
    /// Lex with variable `high` (0 = x, 1 = y) largest.
    Lex { high: usize },
    /// Twist order with variable `high` largest in the base lex order and the
    /// low strip cut at exponent `threshold` of `high`.
    Twist { high: usize, threshold: u32 },
}

/// The order a heart is certified with, together with the parameters after
/// the symmetry reductions (`a0 >= b1`, `a0 + a1 >= b0 + b1` in the mixed
/// case).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeartOrderChoice {
    pub order: HeartOrder,
    pub normalized: [u32; 4],
    /// `x` and `y` were exchanged during normalization.
    pub swapped: bool,
}

impl HeartOrderChoice {
    pub fn build(&self, p: &RankedPoset) -> Result<LevelOrderFamily> {
        match self.order {
            HeartOrder::Lex { high } => {
                let vars = ["x", "y"];
                lex_order(p, &[vars[high], vars[1 - high]])
            }
            HeartOrder::Twist { high, threshold } => twist_order_with(p, high, threshold),
        }
    }

    pub fn describe(&self) -> String {
        let v = ["x", "y"];
        match self.order {
            HeartOrder::Lex { high } => format!("lex({},{})", v[high], v[1 - high]),
            HeartOrder::Twist { high, threshold } => {
                format!("twist({},{threshold})", v[high])
            }
        }
    }
}

/// Picks lex or twist for a Macaulay heart. Errors when the predicate is
/// false.
pub fn heart_order_choice(a0: u32, a1: u32, b0: u32, b1: u32) -> Result<HeartOrderChoice> {
    if !heart_predicate(a0, a1, b0, b1)? {
        return Err(precondition(
            "heart_order_choice",
            format!("heart({a0},{a1},{b0},{b1}) is not Macaulay"),
        ));
    }
    // boxes: the variable with the shorter side is largest
    let boxed = |x: u32, y: u32| HeartOrderChoice {
        order: HeartOrder::Lex {
            high: usize::from(y < x),
        },
        normalized: [a0, a1, b0, b1],
        swapped: false,
    };
    if a0 <= b0 && a1 <= b1 {
        return Ok(boxed(b0, b1));
    }
    if b0 <= a0 && b1 <= a1 {
        return Ok(boxed(a0, a1));
    }
    let (mut a0, mut a1, mut b0, mut b1) = (a0, a1, b0, b1);
    if b0 > a0 {
        std::mem::swap(&mut a0, &mut b0);
        std::mem::swap(&mut a1, &mut b1);
    }
    let mut swapped = false;
    if a0 < b1 || (a0 == b1 && a1 < b0) {
        (a0, a1, b0, b1) = (b1, b0, a1, a0);
        swapped = true;
    }
    let high = if swapped { 0 } else { 1 };
    let order = if a1 + b0 > b1 {
        HeartOrder::Lex { high }
    } else {
        HeartOrder::Twist {
            high,
            threshold: a1,
        }
    };
    Ok(HeartOrderChoice {
        order,
        normalized: [a0, a1, b0, b1],
        swapped,
    })
}

fn nontrivial_sides(dims: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = dims.iter().copied().filter(|&d| d > 1).collect();
    v.sort_unstable();
    v
}

fn box_rank(dims: &[u32]) -> u32 {
    dims.iter().map(|d| d - 1).sum()
}

/// Whether the diamond product of two boxes is Macaulay. Sides of length 1
/// are dropped before counting dimensions.
pub fn diamond_box_predicate(p: &[u32], q: &[u32]) -> Result<bool> {
    if p.contains(&0) || q.contains(&0) {
        return Err(precondition("diamond_box_predicate", "side lengths must be >= 1"));
    }
    let (rp, rq) = (box_rank(p), box_rank(q));
    if rp != rq {
        return Err(precondition(
            "diamond_box_predicate",
            format!("top ranks differ ({rp} vs {rq})"),
        ));
    }
    if rp == 0 {
        return Err(precondition("diamond_box_predicate", "boxes of rank 0 have no diamond"));
    }
    let (p, q) = (nontrivial_sides(p), nontrivial_sides(q));
    let path_vs_2k = |a: &[u32], b: &[u32]| a.len() == 1 && b.len() == 2 && b.contains(&2);
    Ok(p == q || path_vs_2k(&p, &q) || path_vs_2k(&q, &p))
}

/// Whether `box(m,n) ∨ box(m2,n2)` is Macaulay, for `m <= n`, `m2 <= n2` and
/// `m, m2 > 1`.
pub fn wedge_box_2d_predicate(m: u32, n: u32, m2: u32, n2: u32) -> Result<bool> {
    if m > n || m2 > n2 || m < 2 || m2 < 2 {
        return Err(precondition(
            "wedge_box_2d_predicate",
            "need m <= n, m' <= n' and m, m' > 1",
        ));
    }
    Ok((m <= m2 && n <= n2) || (m2 <= m && n2 <= n))
}

/// Whether `path(n-1) ∨ box(m2,n2)` is Macaulay, for `n >= 1` and
/// `1 <= m2 <= n2`.
pub fn wedge_path_box_predicate(n: u32, m2: u32, n2: u32) -> Result<bool> {
    if n < 1 || m2 < 1 || m2 > n2 {
        return Err(precondition(
            "wedge_path_box_predicate",
            "need n >= 1 and 1 <= m' <= n'",
        ));
    }
    Ok(n <= n2 || m2 <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heart_cases() {
        assert!(!heart_predicate(4, 1, 3, 3).unwrap());
        assert!(heart_predicate(5, 2, 2, 5).unwrap());
        assert!(heart_predicate(3, 2, 3, 2).unwrap());
        assert!(heart_predicate(0, 1, 1, 1).is_err());
    }

    #[test]
    fn heart_symmetries() {
        for t in 0..625u32 {
            let (a0, a1, b0, b1) = (t % 5 + 1, t / 5 % 5 + 1, t / 25 % 5 + 1, t / 125 + 1);
            let v = heart_predicate(a0, a1, b0, b1).unwrap();
            assert_eq!(v, heart_predicate(b0, b1, a0, a1).unwrap());
            assert_eq!(v, heart_predicate(a1, a0, b1, b0).unwrap());
        }
    }

    #[test]
    fn order_choice_examples() {
        let c = heart_order_choice(5, 2, 2, 5).unwrap();
        assert_eq!(c.order, HeartOrder::Twist { high: 1, threshold: 2 });
        let c = heart_order_choice(4, 3, 3, 4).unwrap();
        assert_eq!(c.order, HeartOrder::Lex { high: 1 });
        assert!(!c.swapped);
        assert!(matches!(heart_order_choice(3, 2, 3, 2).unwrap().order, HeartOrder::Lex { .. }));
        assert!(heart_order_choice(4, 1, 3, 3).is_err());
        // a0 < b1 is moved to a0 > b1 by exchanging x and y
        let c = heart_order_choice(3, 1, 2, 4).unwrap();
        assert!(c.swapped);
        assert_eq!(c.normalized, [4, 2, 1, 3]);
    }

    #[test]
    fn diamond_examples() {
        assert!(diamond_box_predicate(&[3, 4], &[3, 4]).unwrap());
        assert!(diamond_box_predicate(&[6], &[2, 5]).unwrap());
        assert!(!diamond_box_predicate(&[2, 2, 2], &[4]).unwrap());
        assert!(diamond_box_predicate(&[4, 3], &[1, 3, 4]).unwrap());
        assert!(diamond_box_predicate(&[2, 3], &[3]).is_err());
        assert_eq!(
            diamond_box_predicate(&[2, 4], &[3, 3]).unwrap(),
            diamond_box_predicate(&[3, 3], &[2, 4]).unwrap()
        );
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge_box_2d_predicate(2, 3, 3, 4).unwrap());
        assert!(!wedge_box_2d_predicate(2, 5, 3, 4).unwrap());
        assert!(wedge_path_box_predicate(4, 2, 9).unwrap());
        assert!(!wedge_path_box_predicate(6, 3, 4).unwrap());
        assert!(wedge_box_2d_predicate(3, 2, 3, 4).is_err());
    }
}
