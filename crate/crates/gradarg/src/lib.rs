//! Graded extension-based semantics for finite abstract argumentation
//! frameworks (AAFs).
//!
//! An AAF is a finite directed graph `⟨A, →⟩` whose vertices are arguments
//! and whose edges are attacks. Classical semantics (conflict-free,
//! admissible, complete, stable, …) accept a set of arguments when *no*
//! member is attacked from inside and every attacker is countered. The
//! graded generalisation replaces these all-or-nothing thresholds by four
//! positive integer grades `ℓ, m, n, η`: a set is ℓ-conflict-free when each
//! member has fewer than ℓ attackers inside it, defense tolerates up to
//! m − 1 insufficiently countered attackers, and so on.
//!
//! The crate is organised around a small kernel of two operators —
//! graded neutrality `N_ℓ` and graded defense `D_n^m` — from which every
//! semantics here is assembled:
//!
//! - [`af`] — the data model (frameworks, argument sets, extension
//!   families) plus APX/TGF parsing and DOT/JSON export;
//! - [`kernel`] — `N_ℓ`, `D_n^m`, the range operator `E_η^+`, and attacker
//!   combination queries;
//! - [`fixpoint`] — iteration of `D_n^m`, least/greatest fixpoints, local
//!   well-foundedness, and reachability profiles;
//! - [`semantics`] — exhaustive enumerators for the concrete semantics and
//!   the derived combinators (maximality, range-maximality, interval,
//!   parameterized, ideal, eager);
//! - [`reduced_meet`] — principal ultrafilters over finite index sets, the
//!   reduced-meet operator, and verifiers for its algebraic laws;
//! - [`analysis`] — extensibility/inference queries, minimal anti-sets,
//!   framework equivalence, safe attack-relation restrictions, and order
//!   structure reports;
//! - [`representation`] — the inverse problem for ℓ-conflict-freeness:
//!   which set families arise as `cf_ℓ(F)` for some frame `F`;
//! - [`fol`] — a finite first-order model checker for the language
//!   `{Att, P, ≡}` together with the sentence library that defines the
//!   fundamental semantics;
//! - [`cli`] — the command-line surface used by the `gradarg` binary.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything can be shared freely across threads.

pub mod af;
pub mod analysis;
pub mod cli;
pub mod fixpoint;
pub mod fol;
pub mod kernel;
pub mod reduced_meet;
pub mod representation;
pub mod semantics;

pub use af::{Aaf, ArgSet, ExtensionFamily, Params};
pub use semantics::SemanticsSpec;

/// Errors shared across the crate.
///
/// Parsing problems carry enough position information to point at the
/// offending line; cap overflows name the cap so callers can decide whether
/// to raise it.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} exceeds cap {cap} (got {got})")]
    CapExceeded { what: &'static str, cap: usize, got: usize },
    #[error("defense iteration entered a cycle without reaching a fixpoint")]
    CycleWithoutFixpoint,
    #[error("family has no common index element (finite intersection property fails)")]
    NoFip,
    #[error("family is not ⊆-directed")]
    NotDirected,
    #[error("index sets do not match")]
    IndexMismatch,
    #[error("argument sets of the two frameworks differ")]
    ArgumentMismatch,
    #[error("unknown {what}: {got}")]
    Unknown { what: &'static str, got: String },
}

pub type Result<T> = std::result::Result<T, Error>;
