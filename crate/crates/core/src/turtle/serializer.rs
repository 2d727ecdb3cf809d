use std::collections::HashMap;
use std::fmt::Write;

use crate::rdf::{Graph, Prefixes, Term};
use crate::vocab::rdf;

type PredicateObjects<'a> = Vec<(&'a Term, Vec<&'a Term>)>;

/// Writes `graph` as Turtle using the graph's prefix table.
///
/// Statements are grouped by subject (`;`) and by predicate (`,`). Blank nodes
/// are relabelled `_:b0`, `_:b1`, ... in order of first appearance.
pub fn serialize_turtle(graph: &Graph) -> String {
    Writer::new(graph.prefixes()).write(graph)
}

struct Writer<'p> {
    prefixes: &'p Prefixes,
    blanks: HashMap<String, usize>,
}

impl<'p> Writer<'p> {
    fn new(prefixes: &'p Prefixes) -> Self {
        Self {
            prefixes,
            blanks: HashMap::new(),
        }
    }

    fn write(mut self, graph: &Graph) -> String {
        let mut out = String::new();
        for (prefix, ns) in self.prefixes.iter() {
            let _ = writeln!(out, "@prefix {prefix}: <{}> .", escape_iri(ns));
        }

        // subject -> predicate -> objects, all in first-appearance order
        let mut subjects: Vec<(&Term, PredicateObjects)> = Vec::new();
        let mut subject_index: HashMap<&Term, usize> = HashMap::new();
        for t in graph.iter() {
            let si = *subject_index.entry(t.subject).or_insert_with(|| {
                subjects.push((t.subject, Vec::new()));
                subjects.len() - 1
            });
            let preds = &mut subjects[si].1;
            match preds.iter_mut().find(|(p, _)| *p == t.predicate) {
                Some((_, objects)) => objects.push(t.object),
                None => preds.push((t.predicate, vec![t.object])),
            }
        }

        let type_iri = Term::iri(rdf::TYPE);
        for (subject, mut preds) in subjects {
            preds.sort_by_key(|(p, _)| **p != type_iri);
            out.push('\n');
            out.push_str(&self.term(subject));
            for (k, (predicate, objects)) in preds.iter().enumerate() {
                out.push_str(if k == 0 { " " } else { " ;\n    " });
                if **predicate == type_iri {
                    out.push('a');
                } else {
                    out.push_str(&self.term(predicate));
                }
                for (j, object) in objects.iter().enumerate() {
                    out.push_str(if j == 0 { " " } else { " , " });
                    out.push_str(&self.term(object));
                }
            }
            out.push_str(" .\n");
        }
        out
    }

    fn term(&mut self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Blank(label) => {
                let next = self.blanks.len();
                let n = *self.blanks.entry(label.clone()).or_insert(next);
                format!("_:b{n}")
            }
            Term::Literal(lit) => {
                let mut s = String::with_capacity(lit.value.len() + 2);
                s.push('"');
                for c in lit.value.chars() {
                    match c {
                        '"' => s.push_str("\\\""),
                        '\\' => s.push_str("\\\\"),
                        '\n' => s.push_str("\\n"),
                        '\r' => s.push_str("\\r"),
                        '\t' => s.push_str("\\t"),
                        c if c.is_control() => {
                            let _ = write!(s, "\\u{:04X}", c as u32);
                        }
                        c => s.push(c),
                    }
                }
                s.push('"');
                if let Some(lang) = &lit.lang {
                    s.push('@');
                    s.push_str(lang);
                } else if let Some(dt) = &lit.datatype {
                    s.push_str("^^");
                    s.push_str(&self.iri(dt));
                }
                s
            }
        }
    }

    fn iri(&self, iri: &str) -> String {
        self.prefixes
            .compact(iri)
            .unwrap_or_else(|| format!("<{}>", escape_iri(iri)))
    }
}

fn escape_iri(iri: &str) -> String {
    let mut out = String::with_capacity(iri.len());
    for c in iri.chars() {
        if c.is_control() || c.is_whitespace() || "<>\"{}|^`\\".contains(c) {
            let _ = write!(out, "\\u{:04X}", c as u32);
        } else {
            out.push(c);
        }
    }
    out
}
