//! Closed-form predicates for the classified families, the orders that
//! certify them, and the harness that checks predicates against the search.

mod harness;
pub mod lemmas;
mod predicates;

pub use harness::{
    cartesian_counterexamples, conjecture_6_7_search, equivalence_corpus, staircase_ideals,
    union_simplicial_equivalence_check, verify_family, YZ_EXPR, Conj67Spec, EquivalenceReport, Family,
    FamilySpec, GridReport, GridRow, OrderCheck, Status,
};
pub use predicates::{
    diamond_box_predicate, heart_order_choice, heart_predicate, wedge_box_2d_predicate,
    wedge_path_box_predicate, HeartOrder, HeartOrderChoice,
};
