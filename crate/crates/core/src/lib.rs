//! Proof-checking kernel and toolchain for polarized deduction modulo.
//!
//! * [`syntax`]: sorted terms, propositions, sequents and their text format.
//! * [`theory`]: polarized rewrite systems, clausality, built-in `HOL` / `HOLpm`.
//! * [`rewrite`]: `=_E` normalization and polarized reachability.
//! * [`kernel`]: the twenty-rule sequent calculus checker.
//! * [`translate`]: pullback, substitution into proofs, `HOL` → `HOLpm`.
//! * [`compile`]: first-order axiomatization of a rewrite system, TFF export.
//! * [`search`]: depth-bounded cut-free proof search.
//! * [`cli`]: command-line driver.

pub mod cli;
pub mod compile;
pub mod kernel;
pub mod rewrite;
pub mod search;
pub mod syntax;
pub mod theory;
pub mod translate;
