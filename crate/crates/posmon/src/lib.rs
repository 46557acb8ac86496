//! An exact-arithmetic workbench for positive monoids of ordered fields.
//!
//! A *positive monoid* is a countably generated additive submonoid of the
//! nonnegative cone of an ordered field. This crate works with the two
//! ambient fields Q and Q(X) (rational functions ordered so that X is
//! infinitely large), and computes, always in exact arithmetic:
//!
//! - atoms (irreducible elements) of finitely generated snapshots,
//! - complete factorization sets `Z(x)` and length sets `L(x)`,
//! - divisibility, Archimedean strata and divisor-closedness certificates,
//! - finite sub-level enumerations and upper-bound witnesses,
//! - truncations of parametric generator families with growth and
//!   stability diagnostics across a window of truncation sizes.
//!
//! Infinite monoids are only ever observed through finite truncations; the
//! library reports per-truncation evidence and never claims a verdict about
//! the infinite limit object.
//!
//! The companion guide under `book/` walks through the concepts; its code
//! snippets compile against this crate and run as doctests.
//!
//! ```
//! use posmon::field::{rational::rat, FieldElem};
//! use posmon::monoid::FinMonoid;
//! use posmon::field::FieldTag;
//!
//! let m = FinMonoid::build(
//!     FieldTag::Q,
//!     vec![FieldElem::Q(rat(4)), FieldElem::Q(rat(6)), FieldElem::Q(rat(10))],
//! )
//! .unwrap();
//! // 10 = 4 + 6, so it is not an atom.
//! assert_eq!(m.atoms().len(), 2);
//! ```

pub mod error;
pub mod expr;
pub mod families;
pub mod monoid;
pub mod oracle;
pub mod field;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    // Chapters of the guide run as doctests so the book can never drift
    // from the library. See book/src/.
}
