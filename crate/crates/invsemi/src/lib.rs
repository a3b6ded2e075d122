//! Workbench for small involution semigroups.
//!
//! The crate has three layers:
//!
//! * **Models** ([`model`], [`catalog`]): finite multiplication tables with
//!   an involutive anti-automorphism, identity checking by exhaustive
//!   evaluation, and a catalog of the named models this crate is about —
//!   chiefly the four-element pair `a0`/`b0` and the order-4
//!   classification table.
//! * **Census** ([`enumerate`], [`classify`]): enumeration of all
//!   semigroups of small order up to isomorphism and anti-isomorphism,
//!   attachment of involutions, and a finite-basis classifier reproducing
//!   the published order-4 labels.
//! * **Syntax** ([`word`], [`term`], [`rules`], [`trace`], [`zero`],
//!   [`standard`], [`decide`]): words over a starred alphabet, the
//!   identity systems of `a0` and `b0` as rewriting rules, normal forms,
//!   checkable derivation traces, and a decision procedure for the
//!   equational theories of both models.
//!
//! ```
//! use invsemi::decide::{decide, System};
//! use invsemi::rules::RuleSystem;
//! use invsemi::standard::normalize_a;
//! use invsemi::word::Word;
//!
//! let u = Word::parse("x y x*").unwrap();
//! let v = Word::parse("x y* x*").unwrap();
//! let verdict = decide(System::A0, &u, &v).unwrap();
//! assert!(verdict.holds);
//! assert!(verdict.certificate.check(System::A0, &u, &v));
//!
//! let (form, trace) = normalize_a(&Word::parse("c b a b* a*").unwrap()).unwrap();
//! assert_eq!(trace.verify(&RuleSystem::a0()).unwrap(), form.word());
//! ```

pub mod catalog;
pub mod classify;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod model;
pub mod rules;
pub mod selftest;
pub mod standard;
pub mod term;
pub mod trace;
pub mod word;
pub mod zero;

pub use error::{Error, Result};
pub use model::{Assignment, InvolutionSemigroup, Table};
pub use term::Term;
pub use word::{Letter, Word};
