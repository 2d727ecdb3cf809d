use std::collections::HashMap;

use crate::lexer::{tokenize, ParseDiagnostic, Tok, Token};
use crate::rdf::{Graph, Prefixes, Term};
use crate::vocab::rdf;

/// Triples of one document, with blank labels still document-scoped.
pub(crate) struct Document {
    pub prefixes: Vec<(String, String)>,
    pub triples: Vec<(Term, Term, Term)>,
}

pub(crate) fn parse_document(text: &str) -> Result<Document, ParseDiagnostic> {
    let (tokens, end) = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        i: 0,
        end,
        prefixes: Prefixes::new(),
        declared: Vec::new(),
        triples: Vec::new(),
    };
    parser.document()?;
    Ok(Document {
        prefixes: parser.declared,
        triples: parser.triples,
    })
}

/// Adds the document's triples to `graph`, or nothing at all on error.
///
/// Blank node labels are replaced by labels fresh to `graph`, consistently
/// within the document.
pub(crate) fn parse_into(graph: &mut Graph, text: &str) -> Result<usize, ParseDiagnostic> {
    let doc = parse_document(text)?;
    let mut blanks: HashMap<String, Term> = HashMap::new();
    let mut relabel = |term: Term, graph: &mut Graph| match term {
        Term::Blank(label) => blanks
            .entry(label)
            .or_insert_with(|| graph.fresh_blank())
            .clone(),
        other => other,
    };
    let mut added = 0;
    for (s, p, o) in doc.triples {
        let s = relabel(s, graph);
        let o = relabel(o, graph);
        if graph
            .insert_terms(s, p, o)
            .expect("parser only emits well-formed triples")
        {
            added += 1;
        }
    }
    for (prefix, ns) in doc.prefixes {
        graph.prefixes_mut().insert(prefix, ns);
    }
    Ok(added)
}

struct Parser {
    tokens: Vec<Token>,
    i: usize,
    end: (usize, usize),
    prefixes: Prefixes,
    declared: Vec<(String, String)>,
    triples: Vec<(Term, Term, Term)>,
}

fn unsupported(token: &Token, construct: &str) -> ParseDiagnostic {
    token.error(format!("unsupported Turtle construct: {construct}"))
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.i)
    }

    fn next(&mut self, expected: &str) -> Result<Token, ParseDiagnostic> {
        let token = self.tokens.get(self.i).cloned().ok_or_else(|| {
            ParseDiagnostic::new(
                self.end.0,
                self.end.1,
                format!("expected {expected}, found end of input"),
            )
        })?;
        self.i += 1;
        Ok(token)
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseDiagnostic> {
        let token = self.next(expected)?;
        if token.tok == tok {
            Ok(())
        } else {
            Err(token.error(format!("expected {expected}, found {}", token.tok)))
        }
    }

    fn document(&mut self) -> Result<(), ParseDiagnostic> {
        while let Some(token) = self.peek().cloned() {
            match &token.tok {
                Tok::At(word) if word == "prefix" => {
                    self.i += 1;
                    self.prefix_declaration()?;
                    self.expect(Tok::Dot, "'.' after @prefix directive")?;
                }
                Tok::Ident(word) if word.eq_ignore_ascii_case("prefix") => {
                    self.i += 1;
                    self.prefix_declaration()?;
                }
                Tok::At(word) if word == "base" => return Err(unsupported(&token, "@base")),
                Tok::Ident(word) if word.eq_ignore_ascii_case("base") => {
                    return Err(unsupported(&token, "BASE"))
                }
                Tok::At(word) => {
                    return Err(token.error(format!("unknown directive @{word}")));
                }
                _ => {
                    self.triples_statement()?;
                    self.expect(Tok::Dot, "'.' at end of statement")?;
                }
            }
        }
        Ok(())
    }

    fn prefix_declaration(&mut self) -> Result<(), ParseDiagnostic> {
        let name = self.next("prefix name")?;
        let prefix = match &name.tok {
            Tok::PName { prefix, local } if local.is_empty() => prefix.clone(),
            other => {
                return Err(name.error(format!("expected prefix name ending in ':', found {other}")))
            }
        };
        let ns = self.next("namespace IRI")?;
        let Tok::IriRef(iri) = ns.tok else {
            return Err(ns.error(format!("expected namespace IRI, found {}", ns.tok)));
        };
        self.prefixes.insert(prefix.clone(), iri.clone());
        self.declared.push((prefix, iri));
        Ok(())
    }

    fn triples_statement(&mut self) -> Result<(), ParseDiagnostic> {
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseDiagnostic> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            if !self.eat(&Tok::Semicolon) {
                return Ok(());
            }
            while self.eat(&Tok::Semicolon) {}
            // `;` may be followed directly by the end of the statement.
            if matches!(self.peek().map(|t| &t.tok), Some(Tok::Dot) | None) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> Result<(), ParseDiagnostic> {
        loop {
            let object = self.object()?;
            self.triples
                .push((subject.clone(), predicate.clone(), object));
            if !self.eat(&Tok::Comma) {
                return Ok(());
            }
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn subject(&mut self) -> Result<Term, ParseDiagnostic> {
        let token = self.next("subject")?;
        match &token.tok {
            Tok::IriRef(_) | Tok::PName { .. } => self.iri(&token),
            Tok::Blank(label) => Ok(Term::Blank(label.clone())),
            Tok::LBracket => Err(unsupported(&token, "anonymous blank node '[ ]'")),
            Tok::LParen => Err(unsupported(&token, "collection '( )'")),
            Tok::Str(_) | Tok::Number(_) => Err(token.error("a literal cannot be a subject")),
            other => Err(token.error(format!("expected subject, found {other}"))),
        }
    }

    fn verb(&mut self) -> Result<Term, ParseDiagnostic> {
        let token = self.next("predicate")?;
        match &token.tok {
            Tok::Ident(word) if word == "a" => Ok(Term::iri(rdf::TYPE)),
            Tok::IriRef(_) | Tok::PName { .. } => self.iri(&token),
            Tok::Blank(_) => Err(token.error("a blank node cannot be a predicate")),
            Tok::Str(_) => Err(token.error("a literal cannot be a predicate")),
            other => Err(token.error(format!("expected predicate, found {other}"))),
        }
    }

    fn object(&mut self) -> Result<Term, ParseDiagnostic> {
        let token = self.next("object")?;
        match &token.tok {
            Tok::IriRef(_) | Tok::PName { .. } => self.iri(&token),
            Tok::Blank(label) => Ok(Term::Blank(label.clone())),
            Tok::Str(value) => self.literal_suffix(value.clone()),
            Tok::Number(_) => Err(unsupported(&token, "numeric literal shorthand")),
            Tok::Ident(word) if word == "true" || word == "false" => {
                Err(unsupported(&token, "boolean literal shorthand"))
            }
            Tok::LBracket => Err(unsupported(&token, "anonymous blank node '[ ]'")),
            Tok::LParen => Err(unsupported(&token, "collection '( )'")),
            other => Err(token.error(format!("expected object, found {other}"))),
        }
    }

    fn literal_suffix(&mut self, value: String) -> Result<Term, ParseDiagnostic> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::At(lang)) => {
                self.i += 1;
                Ok(Term::lang_literal(value, lang))
            }
            Some(Tok::DoubleCaret) => {
                self.i += 1;
                let token = self.next("datatype IRI")?;
                match &token.tok {
                    Tok::IriRef(_) | Tok::PName { .. } => {
                        let Term::Iri(dt) = self.iri(&token)? else {
                            unreachable!()
                        };
                        Ok(Term::typed_literal(value, dt))
                    }
                    other => Err(token.error(format!("expected datatype IRI, found {other}"))),
                }
            }
            _ => Ok(Term::literal(value)),
        }
    }

    fn iri(&self, token: &Token) -> Result<Term, ParseDiagnostic> {
        match &token.tok {
            Tok::IriRef(iri) => Ok(Term::Iri(iri.clone())),
            Tok::PName { prefix, local } => match self.prefixes.get(prefix) {
                Some(ns) => Ok(Term::Iri(format!("{ns}{local}"))),
                None => Err(token.error(format!("undeclared prefix '{prefix}:'"))),
            },
            other => Err(token.error(format!("expected IRI, found {other}"))),
        }
    }
}
