#![allow(dead_code)]

use std::path::PathBuf;

use ontobot::rdf::Term;
use ontobot::reasoner::KnowledgeBase;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> PathBuf {
    repo_root().join("fixtures").join(name)
}

pub fn fixture_paths() -> [PathBuf; 2] {
    [fixture("activities.ttl"), fixture("robots.ttl")]
}

pub fn query_file(name: &str) -> String {
    std::fs::read_to_string(repo_root().join("queries").join(name)).unwrap()
}

pub fn kb() -> KnowledgeBase {
    KnowledgeBase::load(&fixture_paths()).expect("fixtures load")
}

pub fn ex(local: &str) -> Term {
    Term::iri(format!("https://example.org/{local}"))
}

pub fn soma(local: &str) -> Term {
    Term::iri(format!("http://www.ease-crc.org/ont/SOMA.owl#{local}"))
}

pub mod gen;
