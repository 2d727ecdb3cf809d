use clap::ValueEnum;
use serde::Serialize;

use crate::rdf::{Prefixes, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

/// Uniform result shape for every command. JSON output is exactly this struct:
/// `{"id": ..., "columns": [...], "rows": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub id: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(id: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            id: id.into(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("table serialises");
                s.push('\n');
                s
            }
        }
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut out = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    out.push_str(cell);
                } else {
                    out.push_str(cell);
                    out.extend(std::iter::repeat_n(' ', w - cell.chars().count() + 2));
                }
            }
            out.push('\n');
            out
        };
        let mut out = line(&self.columns);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// IRIs in prefixed form where a prefix is known, plain literals as their
/// lexical form, everything else in N-Triples syntax.
pub fn render_term(term: &Term, prefixes: &Prefixes) -> String {
    match term {
        Term::Iri(iri) => prefixes.compact(iri).unwrap_or_else(|| term.to_string()),
        Term::Literal(lit) if lit.lang.is_none() && lit.datatype.is_none() => lit.value.clone(),
        _ => term.to_string(),
    }
}

pub fn render_set<'a>(terms: impl IntoIterator<Item = &'a Term>, prefixes: &Prefixes) -> String {
    terms
        .into_iter()
        .map(|t| render_term(t, prefixes))
        .collect::<Vec<_>>()
        .join(" ")
}
