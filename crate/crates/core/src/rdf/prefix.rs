use std::collections::BTreeMap;

use super::{RdfError, Term};

/// Prefix table mapping short names (without the colon) to namespace IRIs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Prefixes {
    map: BTreeMap<String, String>,
}

impl Prefixes {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares or redeclares a prefix.
    pub fn insert(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.map.insert(prefix.into(), namespace.into());
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.map.get(prefix).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Adds every entry of `other` that is not declared here yet.
    pub fn extend_missing(&mut self, other: &Prefixes) {
        for (p, ns) in other.iter() {
            self.map
                .entry(p.to_owned())
                .or_insert_with(|| ns.to_owned());
        }
    }

    /// Expands a prefixed name such as `pko:hasStep` into a full IRI term.
    pub fn expand(&self, qname: &str) -> Result<Term, RdfError> {
        let (prefix, local) = qname
            .split_once(':')
            .ok_or_else(|| RdfError::InvalidPrefixedName(qname.to_owned()))?;
        let ns = self
            .get(prefix)
            .ok_or_else(|| RdfError::UndeclaredPrefix(prefix.to_owned()))?;
        Ok(Term::Iri(format!("{ns}{local}")))
    }

    /// Shortens an IRI to `prefix:local` using the longest matching namespace
    /// whose remainder is a plain local name.
    pub fn compact(&self, iri: &str) -> Option<String> {
        self.map
            .iter()
            .filter_map(|(p, ns)| {
                let local = iri.strip_prefix(ns.as_str())?;
                is_plain_local_name(local).then_some((ns.len(), p, local))
            })
            .max_by_key(|(len, _, _)| *len)
            .map(|(_, p, local)| format!("{p}:{local}"))
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for Prefixes {
    fn from_iter<T: IntoIterator<Item = (K, V)>>(iter: T) -> Self {
        let mut prefixes = Prefixes::new();
        for (k, v) in iter {
            prefixes.insert(k, v);
        }
        prefixes
    }
}

/// Whether `local` can be written after `prefix:` without any escaping.
///
/// This is a conservative subset of the Turtle `PN_LOCAL` production. The empty
/// local name is allowed.
pub fn is_plain_local_name(local: &str) -> bool {
    let mut chars = local.chars();
    let Some(first) = chars.next() else {
        return true;
    };
    if !(first.is_alphanumeric() || first == '_' || first == ':') {
        return false;
    }
    if local.ends_with('.') {
        return false;
    }
    chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.'))
}
