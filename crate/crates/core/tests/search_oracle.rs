mod common;

use common::{brute_macaulay_orders, permutation_count, random_poset};
use macposet::construct;
use macposet::macaulay::{check_macaulay, find_macaulay_order, SearchOptions, SearchOutcome};
use macposet::RankedPoset;

fn agree(p: &RankedPoset) {
    let brute = brute_macaulay_orders(p);
    for twin_pruning in [false, true] {
        let r = find_macaulay_order(
            p,
            &SearchOptions {
                twin_pruning,
                ..Default::default()
            },
        )
        .unwrap();
        match &r.outcome {
            SearchOutcome::Found(o) => {
                assert!(!brute.is_empty(), "{}: search found an order brute force missed", p.name());
                assert!(check_macaulay(p, o).unwrap().is_ok());
                assert!(brute.contains(&o.levels().to_vec()), "{}", p.name());
            }
            SearchOutcome::NoOrder => assert!(brute.is_empty(), "{}: search missed an order", p.name()),
            SearchOutcome::BudgetExceeded => panic!("unbounded search hit the budget"),
        }
    }
}

#[test]
fn search_matches_brute_force_on_random_posets() {
    let mut tested = 0;
    let mut without = 0;
    for seed in 0..400 {
        let p = random_poset(seed, 5, 4, 12);
        if permutation_count(&p) > 20_000 {
            continue;
        }
        agree(&p);
        tested += 1;
        if brute_macaulay_orders(&p).is_empty() {
            without += 1;
        }
    }
    assert!(tested > 200, "{tested}");
    assert!(without > 10 && without < tested, "{without} of {tested}");
}

#[test]
fn search_matches_brute_force_on_named_posets() {
    for p in [
        construct::named_y(),
        construct::named_yz(),
        construct::spider(&[1, 2]).unwrap().poset,
        construct::spider(&[2, 2, 1]).unwrap().poset,
        construct::boxp(&[2, 3]),
        construct::cartesian_product(&construct::path(1), &construct::named_y()).poset,
        construct::heart(2, 1, 1, 2).unwrap(),
        construct::disjoint_union(&[construct::boxp(&[2, 2]), construct::path(1)]).poset,
    ] {
        agree(&p);
    }
}
