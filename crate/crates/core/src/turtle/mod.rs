//! Turtle reader and writer for the subset used by the knowledge-graph files.
//!
//! Supported: `@prefix`/`PREFIX` directives, IRIs, prefixed names, the `a`
//! keyword, `;` and `,` lists, quoted literals with a language tag or
//! datatype, `_:label` blank nodes and `#` comments. Collections, `[ ]`,
//! `@base` and numeric or boolean shorthand are rejected with a diagnostic that
//! names the construct.

mod parser;
mod serializer;

use std::path::{Path, PathBuf};

pub use crate::lexer::ParseDiagnostic;
pub use serializer::serialize_turtle;

use crate::rdf::Graph;

/// Parses a Turtle document into a new graph.
pub fn parse_turtle(text: &str) -> Result<Graph, ParseDiagnostic> {
    let mut graph = Graph::new();
    parser::parse_into(&mut graph, text)?;
    Ok(graph)
}

/// Parses a Turtle document into an existing graph. On error the graph is left
/// untouched. Returns the number of triples that were new.
pub fn parse_turtle_into(graph: &mut Graph, text: &str) -> Result<usize, ParseDiagnostic> {
    parser::parse_into(graph, text)
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Parse {
        path: PathBuf,
        source: ParseDiagnostic,
    },
}

/// Reads and merges several Turtle files into one graph.
pub fn load_files<P: AsRef<Path>>(paths: &[P]) -> Result<Graph, LoadError> {
    let mut graph = Graph::new();
    for path in paths {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.to_owned(),
            source,
        })?;
        parse_turtle_into(&mut graph, &text).map_err(|source| LoadError::Parse {
            path: path.to_owned(),
            source,
        })?;
    }
    Ok(graph)
}
