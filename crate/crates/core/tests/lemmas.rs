mod common;

use common::{check_box_lemmas, LemmaTally};
use macposet::classify::lemmas::check_splitting_inequality;

#[test]
fn box_formulas_hold_up_to_eight() {
    let mut t = LemmaTally::default();
    for a in 1..=8 {
        for b in 1..=8 {
            check_box_lemmas(a, b, &mut t);
        }
    }
    assert!(t.failures.is_empty(), "{:#?}", &t.failures[..t.failures.len().min(20)]);
    assert!(t.segments > 1_000, "{}", t.segments);
    // the literal reading of the box-segment lemma is wrong somewhere
    assert!(t.literal_misses > 0);
}

#[test]
fn square_boxes_agree_with_the_literal_reading() {
    for a in 1..=8 {
        let mut t = LemmaTally::default();
        check_box_lemmas(a, a, &mut t);
        assert_eq!(t.literal_misses, 0, "{a}x{a}");
    }
}

#[test]
fn splitting_inequality_holds_on_its_range() {
    let mut checked = 0;
    for a0 in 1..=6 {
        for a1 in 1..=6 {
            for b0 in 1..=6 {
                for b1 in 1..=6 {
                    if let Ok(f) = check_splitting_inequality(a0, a1, b0, b1) {
                        checked += 1;
                        assert!(f.is_empty(), "({a0},{a1},{b0},{b1}): {:?}", f[0]);
                    }
                }
            }
        }
    }
    assert!(checked > 20);
}
