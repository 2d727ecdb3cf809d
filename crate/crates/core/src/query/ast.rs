use std::collections::BTreeMap;
use std::fmt;

use crate::rdf::{Prefixes, Term};

/// A position in a triple pattern: a constant or a variable name (without `?`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(term: Term) -> Self {
        PatternTerm::Term(term)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => t.fmt(f),
            PatternTerm::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        Self {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }
}

/// A `SELECT [DISTINCT]` query over a basic graph pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: Prefixes,
    pub projection: Vec<String>,
    pub distinct: bool,
    pub pattern: Vec<TriplePattern>,
}

/// One result row, keyed by projected variable name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    bindings: BTreeMap<String, Term>,
}

impl Solution {
    pub fn new(bindings: BTreeMap<String, Term>) -> Self {
        Self { bindings }
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn bindings(&self) -> &BTreeMap<String, Term> {
        &self.bindings
    }

    /// Values in the order of `columns`.
    pub fn row(&self, columns: &[String]) -> Vec<&Term> {
        columns.iter().map(|c| &self.bindings[c]).collect()
    }
}
