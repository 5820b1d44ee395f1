//! The bicyclic monoid `{ b^n a^m } ∪ { Ω }` with `ab = e`, extended to a
//! complete infinitary semigroup: products indexed by finite sums of finite,
//! `ω`, `ω*` and `ζ` orders are defined, `e` is a complete identity, and
//! every non-regular product collapses to `Ω`.
//!
//! Modules, bottom-up:
//! - [`bicyclic`]: the carrier and its finite product.
//! - [`finite_words`]: explicit words over `{a, b}`, pseudonull checkers,
//!   degrees and reducing families.
//! - [`omega_words`]: ultimately periodic transfinite words, their reduced
//!   shapes and a truncation oracle.
//! - [`transfinite`]: product terms, the evaluator, regroupings and the
//!   axiom harness.
//! - [`dsl`]: the surface expression language.
//! - [`checks`], [`commands`]: the check suites and command implementations
//!   behind the `infsg` binary.

pub mod bicyclic;
pub mod checks;
pub mod commands;
pub mod config;
pub mod dsl;
pub mod error;
pub mod finite_words;
pub mod omega_words;
pub mod report;
pub mod transfinite;

pub use bicyclic::{fold, SElem};
pub use error::{Error, Result};
pub use finite_words::{FiniteWord, Letter};
pub use omega_words::{PeriodicWord, ReducedShape};
pub use transfinite::{eval, ProductTerm};
