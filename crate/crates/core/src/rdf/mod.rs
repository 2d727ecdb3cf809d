//! RDF data model: terms, triples, prefix tables and the indexed graph store.

mod graph;
mod iso;
mod prefix;
mod term;

pub use graph::{Graph, TermId, TripleRef};
pub use iso::is_isomorphic;
pub use prefix::{is_plain_local_name, Prefixes};
pub use term::{Literal, Term, Triple};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("literal {0} cannot be used as a subject")]
    LiteralSubject(String),
    #[error("literal {0} cannot be used as a predicate")]
    LiteralPredicate(String),
    #[error("blank node {0} cannot be used as a predicate")]
    BlankPredicate(String),
    #[error("undeclared prefix '{0}:'")]
    UndeclaredPrefix(String),
    #[error("'{0}' is not a prefixed name")]
    InvalidPrefixedName(String),
}
