//! Factorization invariants of numerical monoids.
//!
//! A numerical monoid `S = <n_1, ..., n_k>` is the set of non-negative
//! integer combinations of coprime positive generators. This crate computes,
//! for the elements of such a monoid,
//!
//! * factorization sets `Z(m)` and length sets `L(m)` ([`factorization`]),
//! * delta sets `Δ(m)`, the delta set `Δ(S)` of the whole monoid and where
//!   `Δ` turns periodic ([`delta`]),
//! * ω-primality on `S` and on the integers, bullet sets and the eventual
//!   quasilinear shape of `ω` ([`omega`]).
//!
//! Every invariant is computed by a recurrence over the elements, in
//! increasing order, that looks back at most `n_k` elements. Each dynamic
//! routine has a brute-force counterpart used to cross-check it.
//!
//! ```
//! use numfac::{delta, factorization, omega, NumericalMonoid};
//!
//! let s = NumericalMonoid::new(&[6, 9, 20]).unwrap();
//! assert_eq!(s.frobenius(), 43);
//! assert_eq!(factorization::length_set(&s, 60).unwrap().to_vec(), vec![3, 7, 8, 9, 10]);
//! assert_eq!(delta::delta_set(&s, None).unwrap().gaps(), &[1, 2, 3, 4]);
//! assert_eq!(omega::omega(&s, 1000).unwrap(), 170);
//! ```
//!
//! The guide in `book/` walks through each invariant; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod delta;
mod error;
pub mod factorization;
pub mod monoid;
pub mod omega;
pub mod window;

pub use error::{Error, Result};
pub use monoid::{AperySet, NumericalMonoid};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/monoids.md")]
    mod monoids {}
    #[doc = include_str!("../../../book/src/factorizations.md")]
    mod factorizations {}
    #[doc = include_str!("../../../book/src/delta.md")]
    mod delta {}
    #[doc = include_str!("../../../book/src/omega.md")]
    mod omega {}
    #[doc = include_str!("../../../book/src/quasilinear.md")]
    mod quasilinear {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
