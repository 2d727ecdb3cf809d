//! OntoBOT vocabulary, subclass inference and structural validation.

mod infer;
mod validate;
mod vocabulary;

pub use infer::{infer_types, ClassHierarchy};
pub use validate::{validate, Offender, Rule, ValidationReport, Violation};
pub use vocabulary::Vocabulary;
