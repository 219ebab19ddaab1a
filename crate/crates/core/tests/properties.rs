mod common;

use common::random_poset;
use macposet::classify::union_simplicial_equivalence_check;
use macposet::construct::{
    adjoin_extreme, boxp, cartesian_product, diamond, disjoint_union, fiber_of_ideals, remove_extreme, wedge,
    Extreme,
};
use macposet::expr::{parse_expression, parse_order, Expr, OrderExpr};
use macposet::macaulay::{check_macaulay, find_macaulay_order, SearchOptions};
use macposet::monomial::standard_monomial_poset;
use macposet::order::{lex_order, restrict_order, union_simplicial_order, union_simplicial_order_by};
use macposet::{are_isomorphic, lower_shadow, upper_shadow, LevelSubset, MonomialIdeal, PosetSpec, RankedPoset};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0usize..4).prop_map(Expr::Path),
        prop::collection::vec(1u32..4, 1..4).prop_map(Expr::Box),
        prop::collection::vec(1usize..4, 1..4).prop_map(Expr::Spider),
        [1u32..4, 1u32..4, 1u32..4, 1u32..4].prop_map(Expr::Heart),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Union),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Wedge),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Cart(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Hat(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Uhat(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Bar(Box::new(a))),
            inner.prop_map(|a| Expr::Ubar(Box::new(a))),
        ]
    })
}

fn order_strategy() -> impl Strategy<Value = OrderExpr> {
    let var = prop::sample::select(vec!["x", "y", "z"]).prop_map(String::from);
    let leaf = prop_oneof![
        Just(OrderExpr::Id),
        prop::collection::vec(var.clone(), 1..4).prop_map(OrderExpr::Lex),
        (var, 0u32..5).prop_map(|(high, threshold)| OrderExpr::Twist { high, threshold }),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec(inner, 1..4)
            .prop_flat_map(|parts| {
                let n = parts.len();
                (Just(parts), prop::option::of(Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
            })
            .prop_map(|(parts, precedence)| OrderExpr::Us { precedence, parts })
    })
}

/// The same poset with ids permuted level by level.
fn shuffled(p: &RankedPoset, seed: u64) -> (RankedPoset, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = vec![0; p.len()];
    for d in 0..p.num_levels() {
        let l = p.level(d);
        let mut img = l.to_vec();
        img.shuffle(&mut rng);
        for (&a, &b) in l.iter().zip(&img) {
            perm[a] = b;
        }
    }
    let q = RankedPoset::from_spec(PosetSpec {
        name: "shuffled".into(),
        ranks: p.ranks().to_vec(),
        covers: p.covers().map(|(a, b)| (perm[a], perm[b])).collect(),
        labels: None,
    })
    .unwrap();
    (q, perm)
}

fn same_shape(a: &RankedPoset, b: &RankedPoset) -> bool {
    a.ranks() == b.ranks() && a.covers().eq(b.covers())
}

fn staircase() -> impl Strategy<Value = MonomialIdeal> {
    (1u32..5, 1u32..5, prop::collection::vec((0u32..4, 0u32..4), 0..3)).prop_map(|(a, b, extra)| {
        let mut gens = vec![format!("x^{a}"), format!("y^{b}")];
        gens.extend(extra.iter().filter(|&&(i, j)| i + j > 0).map(|(i, j)| format!("x^{i}*y^{j}")));
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        MonomialIdeal::parse_generators(&["x", "y"], &gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expressions_round_trip(e in expr_strategy()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expression(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn orders_round_trip(o in order_strategy()) {
        let text = o.to_string();
        prop_assert_eq!(parse_order(&text).unwrap(), o, "{}", text);
    }

    #[test]
    fn bar_undoes_hat(seed in 0u64..10_000) {
        let p = random_poset(seed, 5, 4, 16);
        if let Ok(h) = adjoin_extreme(&p, Extreme::Top) {
            prop_assert!(same_shape(&remove_extreme(&h, Extreme::Top).unwrap(), &p));
        }
        if let Ok(u) = adjoin_extreme(&p, Extreme::Bottom) {
            // the new minimum shifted every rank up by one
            let back = remove_extreme(&u, Extreme::Bottom).unwrap();
            prop_assert!(back.covers().eq(p.covers()));
            prop_assert!(back.ranks().iter().zip(p.ranks()).all(|(a, b)| *a == b + 1));
        }
    }

    #[test]
    fn hat_undoes_bar_on_boxes(dims in prop::collection::vec(1u32..4, 1..4)) {
        let b = boxp(&dims);
        prop_assume!(b.len() > 1);
        let top = adjoin_extreme(&remove_extreme(&b, Extreme::Top).unwrap(), Extreme::Top).unwrap();
        let bottom = adjoin_extreme(&remove_extreme(&b, Extreme::Bottom).unwrap(), Extreme::Bottom).unwrap();
        prop_assert!(are_isomorphic(&top, &b).is_some());
        prop_assert!(are_isomorphic(&bottom, &b).is_some());
    }

    #[test]
    fn shuffled_posets_are_isomorphic(seed in 0u64..10_000) {
        let p = random_poset(seed, 5, 4, 16);
        let (q, perm) = shuffled(&p, seed);
        let iso = are_isomorphic(&p, &q).expect("relabeling is an isomorphism");
        prop_assert!(iso.validate(&p, &q));
        prop_assert!(iso.inverse().validate(&q, &p));
        prop_assert!(iso.then(&iso.inverse()).validate(&p, &p));
        let direct = macposet::PosetIso { mapping: perm };
        prop_assert!(direct.validate(&p, &q));
    }

    #[test]
    fn isomorphism_sees_an_extra_cover(seed in 0u64..10_000) {
        let p = random_poset(seed, 4, 4, 12);
        let mut spec = p.to_spec();
        let missing = (1..p.num_levels()).find_map(|d| {
            p.level(d - 1).iter().flat_map(|&a| p.level(d).iter().map(move |&b| (a, b)))
                .find(|&(a, b)| !p.up_covers(a).contains(&b))
        });
        if let Some(c) = missing {
            spec.covers.push(c);
            let q = RankedPoset::from_spec(spec).unwrap();
            prop_assert!(are_isomorphic(&p, &q).is_none());
        }
    }

    #[test]
    fn fiber_of_ideals_is_the_intersection(i in staircase(), j in staircase()) {
        let f = fiber_of_ideals(&i, &j).unwrap();
        let meet = standard_monomial_poset(&i.intersection(&j).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&f.poset, &meet).is_some());
        let sizes = |m: &MonomialIdeal| standard_monomial_poset(m).unwrap().len();
        prop_assert_eq!(f.poset.len() + sizes(&i.sum(&j).unwrap()), sizes(&i) + sizes(&j));
    }

    #[test]
    fn union_simplicial_order_restricts_to_factors(
        a in prop::collection::vec(1u32..4, 2..=2),
        b in prop::collection::vec(1u32..4, 2..=2),
        flip in any::<bool>(),
    ) {
        let ps = [boxp(&a), boxp(&b)];
        let orders: Vec<_> = ps.iter().map(|p| lex_order(p, &["x", "y"]).unwrap()).collect();
        let precedence = if flip { vec![1, 0] } else { vec![0, 1] };
        for op in [wedge(&ps).unwrap(), disjoint_union(&ps)] {
            let us = union_simplicial_order_by(&op.poset, &op.provenance, &orders, &precedence).unwrap();
            for (f, p) in ps.iter().enumerate() {
                let r = restrict_order(&us, p, &op.factor_embedding(f)).unwrap();
                prop_assert_eq!(r.levels(), orders[f].levels());
            }
        }
    }

    #[test]
    fn shadows_are_dual(seed in 0u64..10_000, mask_a in any::<u32>(), mask_b in any::<u32>()) {
        let p = random_poset(seed, 4, 5, 16);
        for d in 0..p.num_levels().saturating_sub(1) {
            let pick = |level: usize, mask: u32| {
                let l: Vec<usize> = p.level(level).iter().enumerate()
                    .filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, &e)| e).collect();
                LevelSubset::from_elements(&p, level, &l).unwrap()
            };
            let a = pick(d, mask_a);
            let b = pick(d + 1, mask_b);
            let up = upper_shadow(&p, &a);
            let down = lower_shadow(&p, &b);
            prop_assert_eq!(up.intersection(&b).is_empty(), a.intersection(&down).is_empty());
            let back = lower_shadow(&p, &up);
            for e in a.elements(&p) {
                prop_assert_eq!(back.contains(&p, e), !p.up_covers(e).is_empty());
            }
            prop_assert!(b.is_subset(&upper_shadow(&p, &down)));
        }
    }

    #[test]
    fn cartesian_product_level_sizes(a in 0usize..4, dims in prop::collection::vec(1u32..4, 1..3)) {
        let p = macposet::construct::path(a);
        let q = boxp(&dims);
        let c = cartesian_product(&p, &q).poset;
        let (sp, sq) = (p.level_sizes(), q.level_sizes());
        let mut want = vec![0; sp.len() + sq.len() - 1];
        for (i, x) in sp.iter().enumerate() {
            for (j, y) in sq.iter().enumerate() {
                want[i + j] += x * y;
            }
        }
        prop_assert_eq!(c.level_sizes(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn union_wedge_diamond_forms_agree(
        a in prop::collection::vec(1u32..4, 1..3),
        b in prop::collection::vec(1u32..4, 1..3),
    ) {
        let name = |d: &[u32]| format!("box({})", d.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        let ps = vec![(name(&a), boxp(&a)), (name(&b), boxp(&b))];
        let r = union_simplicial_equivalence_check(&ps, &SearchOptions::default()).unwrap();
        prop_assert_ne!(r.equivalent, Some(false), "{:?}", r.inputs);
        prop_assert!(r.chain_holds, "{:?}", r.inputs);
    }

    #[test]
    fn certified_orders_are_found(dims in prop::collection::vec(1u32..4, 2..=2)) {
        let p = boxp(&dims);
        let w = wedge(&[p.clone(), p.clone()]).unwrap();
        let lex = lex_order(&p, &["x", "y"]).unwrap();
        let mut ops = vec![w];
        ops.extend(diamond(&[p.clone(), p]));
        for op in ops {
            let us = union_simplicial_order(&op.poset, &op.provenance, &[lex.clone(), lex.clone()]).unwrap();
            if check_macaulay(&op.poset, &us).unwrap().is_ok() {
                let found = find_macaulay_order(&op.poset, &SearchOptions::default()).unwrap().outcome.is_found();
                prop_assert!(found, "{}", op.poset.name());
            }
        }
    }
}
