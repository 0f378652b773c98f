//! Instance documents, enumeration, random generation, and the property
//! mining engine behind the `finconv` command-line tool.
//!
//! The harness is deliberately thin over `finconv-core`: it parses and
//! serializes instance documents, streams exhaustive or seeded-random
//! instances, and runs registered properties over those streams. Identical
//! tasks (same property, source, seed, bounds) produce byte-identical
//! reports, and violating instances are written back out as ordinary
//! documents so any counterexample becomes a permanent regression fixture.

pub mod cli;
pub mod doc;
pub mod dot;
pub mod enumerate;
pub mod gen;
pub mod mine;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Parse(#[from] doc::ParseError),
    #[error(transparent)]
    Core(#[from] finconv_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("document has no {kind} named `{name}`")]
    MissingItem { kind: &'static str, name: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
