//! Ranked posets, the wedge/diamond/fiber/cartesian operations on them, and
//! exact decision procedures for the Macaulay and additivity properties.
//!
//! ```
//! use macposet::{construct, order, macaulay};
//!
//! let b = construct::boxp(&[3, 4]);
//! let lex = order::lex_order(&b, &["x", "y"]).unwrap();
//! assert!(macaulay::check_macaulay(&b, &lex).unwrap().is_ok());
//! ```

pub mod bitset;
pub mod classify;
pub mod construct;
pub mod error;
pub mod expr;
pub mod format;
pub mod iso;
pub mod macaulay;
pub mod monomial;
pub mod order;
pub mod poset;
pub mod report;
pub mod reproduce;
pub mod verdict;

pub use error::{Error, Result};
pub use iso::{are_isomorphic, PosetIso};
pub use monomial::{ExponentVector, MonomialIdeal};
pub use order::{LevelOrderFamily, Provenance};
pub use poset::{lower_shadow, upper_shadow, validate_poset, LevelSubset, PosetSpec, RankedPoset};
pub use verdict::{Verdict, Witness};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($i:ident) => {
            #[doc = include_str!(concat!("../../../book/src/", stringify!($i), ".md"))]
            mod $i {}
        };
    }
    chapter!(introduction);
    chapter!(posets);
    chapter!(orders);
    chapter!(search);
    chapter!(families);
    chapter!(cli);

    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
