use crate::lexer::{tokenize, ParseDiagnostic, Tok, Token};
use crate::rdf::{Prefixes, Term};
use crate::vocab::rdf;

use super::{PatternTerm, Query, QueryError, TriplePattern};

/// Keywords of SPARQL features outside the supported subset, with the name
/// used in the diagnostic.
const UNSUPPORTED: &[(&str, &str)] = &[
    ("FILTER", "FILTER"),
    ("OPTIONAL", "OPTIONAL"),
    ("UNION", "UNION"),
    ("MINUS", "MINUS"),
    ("GRAPH", "GRAPH"),
    ("SERVICE", "SERVICE"),
    ("BIND", "BIND"),
    ("VALUES", "VALUES"),
    ("GROUP", "GROUP BY"),
    ("HAVING", "HAVING"),
    ("ORDER", "ORDER BY"),
    ("LIMIT", "LIMIT"),
    ("OFFSET", "OFFSET"),
    ("CONSTRUCT", "CONSTRUCT"),
    ("ASK", "ASK"),
    ("DESCRIBE", "DESCRIBE"),
    ("FROM", "FROM"),
    ("REDUCED", "REDUCED"),
    ("BASE", "BASE"),
    ("COUNT", "aggregate COUNT"),
    ("SUM", "aggregate SUM"),
    ("MIN", "aggregate MIN"),
    ("MAX", "aggregate MAX"),
    ("AVG", "aggregate AVG"),
    ("SAMPLE", "aggregate SAMPLE"),
    ("GROUP_CONCAT", "aggregate GROUP_CONCAT"),
];

pub(super) fn parse(text: &str, defaults: &Prefixes) -> Result<Query, QueryError> {
    let (tokens, end) = tokenize(text)?;
    if let Some(err) = scan_unsupported(&tokens) {
        return Err(err);
    }
    let mut parser = Parser {
        tokens,
        i: 0,
        end,
        prefixes: Prefixes::new(),
        defaults,
    };
    parser.query()
}

/// Reports the first keyword of an unsupported feature anywhere in the text.
fn scan_unsupported(tokens: &[Token]) -> Option<QueryError> {
    tokens.iter().find_map(|token| match &token.tok {
        Tok::Ident(word) => UNSUPPORTED
            .iter()
            .find(|(kw, _)| word.eq_ignore_ascii_case(kw))
            .map(|(_, feature)| QueryError::unsupported(token, feature)),
        Tok::At(word) if word == "base" => Some(QueryError::unsupported(token, "BASE")),
        _ => None,
    })
}

struct Parser<'d> {
    tokens: Vec<Token>,
    i: usize,
    end: (usize, usize),
    prefixes: Prefixes,
    defaults: &'d Prefixes,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.i).map(|t| &t.tok)
    }

    fn end_error(&self, expected: &str) -> ParseDiagnostic {
        ParseDiagnostic::new(
            self.end.0,
            self.end.1,
            format!("expected {expected}, found end of input"),
        )
    }

    fn next(&mut self, expected: &str) -> Result<Token, ParseDiagnostic> {
        let token = self
            .tokens
            .get(self.i)
            .cloned()
            .ok_or_else(|| self.end_error(expected))?;
        self.i += 1;
        Ok(token)
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, ParseDiagnostic> {
        let token = self.next(expected)?;
        if token.tok == tok {
            Ok(token)
        } else {
            Err(token.error(format!("expected {expected}, found {}", token.tok)))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w.eq_ignore_ascii_case(kw)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        self.prologue()?;

        let select = self.next("SELECT")?;
        if !matches!(&select.tok, Tok::Ident(w) if w.eq_ignore_ascii_case("SELECT")) {
            return Err(select
                .error(format!("expected SELECT, found {}", select.tok))
                .into());
        }
        let distinct = self.eat_keyword("DISTINCT");

        let mut projection: Vec<(String, Token)> = Vec::new();
        let mut star = false;
        loop {
            match self.peek() {
                Some(Tok::Var(_)) => {
                    let token = self.next("variable")?;
                    let Tok::Var(name) = &token.tok else {
                        unreachable!()
                    };
                    if projection.iter().any(|(n, _)| n == name) {
                        return Err(token
                            .error(format!("variable ?{name} is projected twice"))
                            .into());
                    }
                    projection.push((name.clone(), token.clone()));
                }
                Some(Tok::Star) if projection.is_empty() && !star => {
                    self.i += 1;
                    star = true;
                }
                Some(Tok::LParen) => {
                    let token = self.next("variable")?;
                    return Err(QueryError::unsupported(&token, "projection expression"));
                }
                _ => break,
            }
        }
        if projection.is_empty() && !star {
            return Err(match self.tokens.get(self.i) {
                Some(t) => t.error(format!("expected projected variables, found {}", t.tok)),
                None => self.end_error("projected variables"),
            }
            .into());
        }

        self.eat_keyword("WHERE");
        let open = self.expect(Tok::LBrace, "'{'")?;
        let pattern = self.triples_block()?;
        self.expect(Tok::RBrace, "'}'")?;
        if let Some(extra) = self.tokens.get(self.i) {
            return Err(extra
                .error(format!("unexpected {} after query body", extra.tok))
                .into());
        }
        if pattern.is_empty() {
            return Err(open.error("empty graph pattern").into());
        }

        let projection = if star {
            let mut vars: Vec<String> = Vec::new();
            for v in pattern.iter().flat_map(TriplePattern::vars) {
                if !vars.iter().any(|x| x == v) {
                    vars.push(v.to_owned());
                }
            }
            vars
        } else {
            for (name, token) in &projection {
                if !pattern.iter().any(|tp| tp.vars().any(|v| v == name)) {
                    return Err(token
                        .error(format!(
                            "projected variable ?{name} does not occur in the pattern"
                        ))
                        .into());
                }
            }
            projection.into_iter().map(|(name, _)| name).collect()
        };

        let mut prefixes = self.prefixes.clone();
        prefixes.extend_missing(self.defaults);
        Ok(Query {
            prefixes,
            projection,
            distinct,
            pattern,
        })
    }

    fn prologue(&mut self) -> Result<(), ParseDiagnostic> {
        loop {
            match self.peek() {
                Some(Tok::Ident(w)) if w.eq_ignore_ascii_case("PREFIX") => {
                    self.i += 1;
                    self.prefix_declaration()?;
                }
                Some(Tok::At(w)) if w == "prefix" => {
                    self.i += 1;
                    self.prefix_declaration()?;
                    self.eat(&Tok::Dot);
                }
                _ => return Ok(()),
            }
        }
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
        let Tok::IriRef(iri) = &ns.tok else {
            return Err(ns.error(format!("expected namespace IRI, found {}", ns.tok)));
        };
        self.prefixes.insert(prefix, iri.clone());
        Ok(())
    }

    fn triples_block(&mut self) -> Result<Vec<TriplePattern>, QueryError> {
        let mut patterns = Vec::new();
        while !matches!(self.peek(), Some(Tok::RBrace) | None) {
            let subject = self.node("subject")?;
            self.property_list(&subject, &mut patterns)?;
            if !self.eat(&Tok::Dot) {
                break;
            }
        }
        Ok(patterns)
    }

    fn property_list(
        &mut self,
        subject: &PatternTerm,
        out: &mut Vec<TriplePattern>,
    ) -> Result<(), QueryError> {
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.node("object")?;
                out.push(TriplePattern::new(
                    subject.clone(),
                    predicate.clone(),
                    object,
                ));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            if !self.eat(&Tok::Semicolon) {
                return Ok(());
            }
            while self.eat(&Tok::Semicolon) {}
            if matches!(self.peek(), Some(Tok::Dot | Tok::RBrace) | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<PatternTerm, QueryError> {
        let token = self.next("predicate")?;
        let term = match &token.tok {
            Tok::Ident(w) if w == "a" => PatternTerm::Term(Term::iri(rdf::TYPE)),
            Tok::Var(v) => PatternTerm::Var(v.clone()),
            Tok::IriRef(_) | Tok::PName { .. } => PatternTerm::Term(self.iri(&token)?),
            Tok::Str(_) => return Err(token.error("a literal cannot be a predicate").into()),
            Tok::Punct(_) => return Err(QueryError::unsupported(&token, "property path")),
            other => {
                return Err(token
                    .error(format!("expected predicate, found {other}"))
                    .into())
            }
        };
        if let Some(Tok::Punct('/' | '|' | '*' | '+' | '?' | '^')) | Some(Tok::Star) = self.peek() {
            let token = self.next("path")?;
            return Err(QueryError::unsupported(&token, "property path"));
        }
        Ok(term)
    }

    fn node(&mut self, what: &str) -> Result<PatternTerm, QueryError> {
        let token = self.next(what)?;
        Ok(match &token.tok {
            Tok::Var(v) => PatternTerm::Var(v.clone()),
            Tok::IriRef(_) | Tok::PName { .. } => PatternTerm::Term(self.iri(&token)?),
            Tok::Str(value) => PatternTerm::Term(self.literal_suffix(value.clone())?),
            Tok::Blank(_) | Tok::LBracket => {
                return Err(QueryError::unsupported(&token, "blank node in pattern"))
            }
            Tok::LParen => return Err(QueryError::unsupported(&token, "collection")),
            Tok::Number(_) => return Err(QueryError::unsupported(&token, "numeric literal")),
            Tok::Ident(w) if w == "true" || w == "false" => {
                return Err(QueryError::unsupported(&token, "boolean literal"))
            }
            other => {
                return Err(token
                    .error(format!("expected {what}, found {other}"))
                    .into())
            }
        })
    }

    fn literal_suffix(&mut self, value: String) -> Result<Term, ParseDiagnostic> {
        match self.peek().cloned() {
            Some(Tok::At(lang)) => {
                self.i += 1;
                Ok(Term::lang_literal(value, lang))
            }
            Some(Tok::DoubleCaret) => {
                self.i += 1;
                let token = self.next("datatype IRI")?;
                let Term::Iri(dt) = self.iri(&token)? else {
                    unreachable!()
                };
                Ok(Term::typed_literal(value, dt))
            }
            _ => Ok(Term::literal(value)),
        }
    }

    fn iri(&self, token: &Token) -> Result<Term, ParseDiagnostic> {
        match &token.tok {
            Tok::IriRef(iri) => Ok(Term::Iri(iri.clone())),
            Tok::PName { prefix, local } => {
                let ns = self
                    .prefixes
                    .get(prefix)
                    .or_else(|| self.defaults.get(prefix))
                    .ok_or_else(|| token.error(format!("undeclared prefix '{prefix}:'")))?;
                Ok(Term::Iri(format!("{ns}{local}")))
            }
            other => Err(token.error(format!("expected IRI, found {other}"))),
        }
    }
}
