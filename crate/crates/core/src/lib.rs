//! Frullani integrals and their disguises, checked numerically.
//!
//! [`frullani`] applies `(f(0) - f(∞)) ln(b/a)` to a parsed `f` after probing
//! its limits ([`limits`]). [`catalog`] holds tabulated identities that
//! reduce to it and verifies each against [`quadrature`]. [`series`] covers
//! the log-cosine integral, where `f` has no limit at infinity and the value
//! comes from a term-by-term expansion instead.
//!
//! The guide in `book/` walks through each piece; its code blocks run as
//! doctests of this crate.

// `!(x <= tol)` style comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod expr;
pub mod frullani;
pub mod limits;
pub mod quadrature;
pub mod record;
pub mod series;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/frullani.md")]
    mod frullani {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
