//! Knowledge-graph engine for service-robot task reasoning.
//!
//! Activity and robot knowledge graphs are loaded from Turtle, queried with a
//! basic-graph-pattern subset of SPARQL, typed through RDFS subclass closure and
//! checked against the OntoBOT vocabulary. The [`reasoner`] answers the six
//! competency questions (objects and affordances, task plans, required
//! affordances, capable robots, joint feasibility and per-step gaps).

pub mod cli;
mod lexer;
pub mod query;
pub mod rdf;
pub mod reasoner;
pub mod schema;
pub mod turtle;
pub mod vocab;
