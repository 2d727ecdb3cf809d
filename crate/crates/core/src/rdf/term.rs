use std::cmp::Ordering;
use std::fmt;

use super::RdfError;

/// A literal: lexical form plus an optional language tag or datatype IRI.
///
/// A literal without a datatype is *not* equal to the same lexical form with an
/// explicit `xsd:string` datatype. Both denote a string, but they are kept apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub value: String,
    pub lang: Option<String>,
    pub datatype: Option<String>,
}

/// The atomic graph element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// A fully expanded IRI.
    Iri(String),
    /// A blank node label, without the `_:` marker.
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Self {
        Term::Iri(iri.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    pub fn literal(value: impl Into<String>) -> Self {
        Term::Literal(Literal {
            value: value.into(),
            lang: None,
            datatype: None,
        })
    }

    pub fn lang_literal(value: impl Into<String>, lang: impl Into<String>) -> Self {
        Term::Literal(Literal {
            value: value.into(),
            lang: Some(lang.into()),
            datatype: None,
        })
    }

    pub fn typed_literal(value: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal(Literal {
            value: value.into(),
            lang: None,
            datatype: Some(datatype.into()),
        })
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    /// The IRI text, the blank label, or the literal's lexical form.
    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) | Term::Blank(s) => s,
            Term::Literal(lit) => &lit.value,
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Term::Iri(_) => 0,
            Term::Blank(_) => 1,
            Term::Literal(_) => 2,
        }
    }
}

// Ordered by lexical form first so that sorted result tables read naturally.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lexical()
            .cmp(other.lexical())
            .then_with(|| self.kind_rank().cmp(&other.kind_rank()))
            .then_with(|| match (self, other) {
                (Term::Literal(a), Term::Literal(b)) => a
                    .lang
                    .cmp(&b.lang)
                    .then_with(|| a.datatype.cmp(&b.datatype)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// N-Triples style rendering.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                f.write_str("\"")?;
                for c in lit.value.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\r' => f.write_str("\\r")?,
                        '\t' => f.write_str("\\t")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")?;
                if let Some(lang) = &lit.lang {
                    write!(f, "@{lang}")?;
                } else if let Some(dt) = &lit.datatype {
                    write!(f, "^^<{dt}>")?;
                }
                Ok(())
            }
        }
    }
}

/// A subject-predicate-object statement.
///
/// Construction checks that the subject is an IRI or blank node and that the
/// predicate is an IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, RdfError> {
        if subject.is_literal() {
            return Err(RdfError::LiteralSubject(subject.to_string()));
        }
        match predicate {
            Term::Iri(_) => {}
            Term::Literal(_) => return Err(RdfError::LiteralPredicate(predicate.to_string())),
            Term::Blank(_) => return Err(RdfError::BlankPredicate(predicate.to_string())),
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Term, Term) {
        (self.subject, self.predicate, self.object)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
