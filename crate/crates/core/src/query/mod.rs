//! SELECT queries over basic graph patterns.
//!
//! The accepted language is `PREFIX` declarations, `SELECT [DISTINCT]` with
//! variables (or `*`), and a `WHERE { ... }` block of triple patterns written
//! with the same abbreviations as Turtle. Keywords of other SPARQL features
//! produce [`QueryError::Unsupported`].

mod ast;
mod eval;
mod parser;

pub use crate::lexer::ParseDiagnostic;
pub use ast::{PatternTerm, Query, Solution, TriplePattern};
pub use eval::evaluate;

use crate::lexer::Token;
use crate::rdf::Prefixes;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("{0}")]
    Syntax(#[from] ParseDiagnostic),
    #[error("{line}:{column}: unsupported feature: {feature}")]
    Unsupported {
        feature: String,
        line: usize,
        column: usize,
    },
}

impl QueryError {
    fn unsupported(token: &Token, feature: &str) -> Self {
        QueryError::Unsupported {
            feature: feature.to_owned(),
            line: token.line,
            column: token.column,
        }
    }
}

/// Parses a query. Every prefix it uses must be declared in the text.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    parser::parse(text, &Prefixes::new())
}

/// Parses a query, resolving prefixes not declared in the text against
/// `defaults`.
pub fn parse_query_with_prefixes(text: &str, defaults: &Prefixes) -> Result<Query, QueryError> {
    parser::parse(text, defaults)
}
