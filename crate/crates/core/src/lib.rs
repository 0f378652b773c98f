//! Finite-scale calculus for pseudotopological spaces.
//!
//! On a finite carrier every ultrafilter is principal, so a pseudotopological
//! structure is exactly a reflexive relation on the points and continuity is
//! exactly relation homomorphism. Everything in this crate builds on that
//! identification: filters are stored by their smallest member, spaces are
//! reflexive digraphs, topological spaces are the transitive ones, and the
//! topological reflector is reflexive-transitive closure. The full derivation
//! lives in `docs/finite-model.md` at the workspace root.
//!
//! Modules mirror the mathematical layers:
//!
//! * [`filters`] — filter algebra on finite sets (pushforward, pullback, products).
//! * [`spaces`] — pseudospaces, continuity, initial/final structures, the
//!   structure lattice and the topological reflector.
//! * [`exponentials`] — hom-set enumeration, exponential objects, currying,
//!   homotopy, and H-group verification.
//! * [`pasting`] — an executable pasting-lemma checker for covers.
//! * [`components`] — the path-component quotient, Kent's criterion and the
//!   biquotient decision procedure.
//! * [`groups`] — convergence groups and the group-object predicates.
//! * [`schedules`] — exact-rational homotopy schedules on the unit square.

pub mod bitmat;
pub mod carrier;
pub mod components;
pub mod exponentials;
pub mod filters;
pub mod groups;
pub mod pasting;
pub mod schedules;
pub mod spaces;

use thiserror::Error;

/// All subsets of `0..n` as sorted index vectors, in mask order (so the empty
/// set comes first and the full set last). Exponential; for small `n` only.
pub fn enumerate_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 26, "subset enumeration is limited to small carriers");
    (0u64..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Errors shared across the calculus.
///
/// "Undefined" outcomes that the mathematics treats as values (an undefined
/// filter pullback, say) are *not* errors; they are encoded in the relevant
/// return types. Errors here are contract violations by the caller plus the
/// one resource guard needed to keep hom-set enumeration bounded.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("empty core: the improper filter is not representable")]
    EmptyCore,
    #[error("map is not surjective: no preimage for `{0}`")]
    NotSurjective(String),
    #[error("map is not continuous: {0}")]
    NotContinuous(String),
    #[error("map is not basepoint-preserving: {0}")]
    NotPointed(String),
    #[error("space is not topological: {0}")]
    NotTopological(String),
    #[error("not a group table: {0}")]
    MalformedGroup(String),
    #[error("cover does not satisfy its invariant: {0}")]
    MalformedCover(String),
    #[error("piece maps disagree on overlap point `{0}`")]
    OverlapDisagreement(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("hom-set enumeration exceeded the limit of {limit} maps")]
    HomSetTooLarge { limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
