use std::collections::{HashMap, HashSet};

use super::{Prefixes, RdfError, Term, Triple};

/// Dense identifier of an interned term. Only meaningful for the graph that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermId(u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Default)]
struct Dictionary {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
}

impl Dictionary {
    fn intern(&mut self, term: Term) -> TermId {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = TermId(u32::try_from(self.terms.len()).expect("term dictionary overflow"));
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }
}

/// Borrowed view of a stored triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleRef<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Term,
    pub object: &'a Term,
}

impl TripleRef<'_> {
    pub fn to_triple(&self) -> Triple {
        Triple::new(
            self.subject.clone(),
            self.predicate.clone(),
            self.object.clone(),
        )
        .expect("stored triples are well-formed")
    }
}

/// In-memory triple set with subject, predicate and object indexes.
///
/// Graphs are filled during load and only read afterwards; there is no removal.
/// Iteration and match results follow insertion order, so they are stable for a
/// given sequence of inserts.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    dict: Dictionary,
    triples: Vec<[TermId; 3]>,
    set: HashSet<[TermId; 3]>,
    by_subject: HashMap<TermId, Vec<u32>>,
    by_predicate: HashMap<TermId, Vec<u32>>,
    by_object: HashMap<TermId, Vec<u32>>,
    prefixes: Prefixes,
    next_blank: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn prefixes(&self) -> &Prefixes {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut Prefixes {
        &mut self.prefixes
    }

    /// Adds a triple. Returns `false` when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let (s, p, o) = triple.into_parts();
        let key = [
            self.dict.intern(s),
            self.dict.intern(p),
            self.dict.intern(o),
        ];
        if !self.set.insert(key) {
            return false;
        }
        let idx = u32::try_from(self.triples.len()).expect("graph too large");
        self.triples.push(key);
        self.by_subject.entry(key[0]).or_default().push(idx);
        self.by_predicate.entry(key[1]).or_default().push(idx);
        self.by_object.entry(key[2]).or_default().push(idx);
        true
    }

    /// Checks and adds a statement given as loose terms.
    pub fn insert_terms(&mut self, s: Term, p: Term, o: Term) -> Result<bool, RdfError> {
        Ok(self.insert(Triple::new(s, p, o)?))
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        let ids = (
            self.term_id(triple.subject()),
            self.term_id(triple.predicate()),
            self.term_id(triple.object()),
        );
        match ids {
            (Some(s), Some(p), Some(o)) => self.set.contains(&[s, p, o]),
            _ => false,
        }
    }

    /// A blank node whose label is not used anywhere in this graph yet.
    pub fn fresh_blank(&mut self) -> Term {
        loop {
            let term = Term::Blank(format!("b{}", self.next_blank));
            self.next_blank += 1;
            if !self.dict.ids.contains_key(&term) {
                return term;
            }
        }
    }

    /// Copies every triple of `other` into this graph, giving its blank nodes
    /// fresh labels. Prefixes already declared here take precedence.
    pub fn merge(&mut self, other: &Graph) {
        fn relabel<'a>(
            term: &'a Term,
            graph: &mut Graph,
            seen: &mut HashMap<&'a Term, Term>,
        ) -> Term {
            if term.is_blank() {
                seen.entry(term)
                    .or_insert_with(|| graph.fresh_blank())
                    .clone()
            } else {
                term.clone()
            }
        }
        let mut seen = HashMap::new();
        for t in other.iter() {
            let s = relabel(t.subject, self, &mut seen);
            let o = relabel(t.object, self, &mut seen);
            self.insert_terms(s, t.predicate.clone(), o)
                .expect("source triple is well-formed");
        }
        self.prefixes.extend_missing(&other.prefixes);
    }

    pub fn term_id(&self, term: &Term) -> Option<TermId> {
        self.dict.ids.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.dict.terms[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        self.triples.iter().map(|ids| self.resolve(*ids))
    }

    pub fn iter_ids(&self) -> impl Iterator<Item = [TermId; 3]> + '_ {
        self.triples.iter().copied()
    }

    fn resolve(&self, [s, p, o]: [TermId; 3]) -> TripleRef<'_> {
        TripleRef {
            subject: self.term(s),
            predicate: self.term(p),
            object: self.term(o),
        }
    }

    /// Index lookup with `None` as wildcard. The scan starts from the shortest
    /// posting list among the bound positions.
    pub fn match_ids(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
    ) -> impl Iterator<Item = [TermId; 3]> + '_ {
        let postings = [
            (s, &self.by_subject),
            (p, &self.by_predicate),
            (o, &self.by_object),
        ]
        .into_iter()
        .filter_map(|(bound, index)| bound.map(|id| index.get(&id).map_or(&[][..], Vec::as_slice)))
        .min_by_key(|list| list.len());
        let candidates: Box<dyn Iterator<Item = u32> + '_> = match postings {
            Some(list) => Box::new(list.iter().copied()),
            None => Box::new(0..self.triples.len() as u32),
        };
        candidates
            .map(move |i| self.triples[i as usize])
            .filter(move |t| {
                s.is_none_or(|x| t[0] == x)
                    && p.is_none_or(|x| t[1] == x)
                    && o.is_none_or(|x| t[2] == x)
            })
    }

    /// All triples matching the bound positions; `None` is a wildcard.
    pub fn matches<'a>(
        &'a self,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> Box<dyn Iterator<Item = TripleRef<'a>> + 'a> {
        let lookup = |t: Option<&Term>| match t {
            None => Ok(None),
            Some(t) => self.term_id(t).map(Some).ok_or(()),
        };
        match (lookup(s), lookup(p), lookup(o)) {
            (Ok(s), Ok(p), Ok(o)) => Box::new(self.match_ids(s, p, o).map(|ids| self.resolve(ids))),
            _ => Box::new(std::iter::empty()),
        }
    }

    /// Objects of `subject predicate ?o`, in insertion order.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Term) -> Vec<&'a Term> {
        self.matches(Some(subject), Some(predicate), None)
            .map(|t| t.object)
            .collect()
    }

    /// Subjects of `?s predicate object`, in insertion order.
    pub fn subjects<'a>(&'a self, predicate: &Term, object: &Term) -> Vec<&'a Term> {
        self.matches(None, Some(predicate), Some(object))
            .map(|t| t.subject)
            .collect()
    }
}

impl PartialEq for Graph {
    /// Same triple set; prefixes and term ids are not compared.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(&t.to_triple()))
    }
}

impl Eq for Graph {}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "https://example.org/";
    const HAS_AFFORDANCE: &str = "https://w3id.org/onto-bot#hasAffordance";
    const SOMA: &str = "http://www.ease-crc.org/ont/SOMA.owl#";

    fn ex(local: &str) -> Term {
        Term::iri(format!("{EX}{local}"))
    }

    fn soma(local: &str) -> Term {
        Term::iri(format!("{SOMA}{local}"))
    }

    fn has_affordance() -> Term {
        Term::iri(HAS_AFFORDANCE)
    }

    #[test]
    fn insert_into_empty_graph() {
        let mut g = Graph::new();
        assert!(g
            .insert_terms(ex("drawer"), has_affordance(), soma("Opening"))
            .unwrap());
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn insert_twice_is_noop() {
        let mut g = Graph::new();
        let t = Triple::new(ex("drawer"), has_affordance(), soma("Opening")).unwrap();
        assert!(g.insert(t.clone()));
        assert!(!g.insert(t));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn insert_with_literal_predicate_fails() {
        let mut g = Graph::new();
        assert!(g
            .insert_terms(ex("a"), Term::literal("p"), ex("b"))
            .is_err());
        assert!(g.is_empty());
    }

    #[test]
    fn empty_graph_matches_nothing() {
        let g = Graph::new();
        assert_eq!(g.matches(None, None, None).count(), 0);
    }

    #[test]
    fn match_by_subject_and_predicate() {
        let mut g = Graph::new();
        g.insert_terms(ex("drawer"), has_affordance(), soma("Opening"))
            .unwrap();
        g.insert_terms(ex("drawer"), has_affordance(), soma("Closing"))
            .unwrap();
        g.insert_terms(ex("bowl"), has_affordance(), soma("Grasping"))
            .unwrap();
        let objects = g.objects(&ex("drawer"), &has_affordance());
        assert_eq!(objects, vec![&soma("Opening"), &soma("Closing")]);
        assert_eq!(g.matches(None, Some(&has_affordance()), None).count(), 3);
        assert_eq!(g.matches(Some(&ex("nothing")), None, None).count(), 0);
    }

    #[test]
    fn fresh_blank_skips_used_labels() {
        let mut g = Graph::new();
        g.insert_terms(Term::blank("b0"), has_affordance(), soma("Opening"))
            .unwrap();
        assert_eq!(g.fresh_blank(), Term::blank("b1"));
    }

    #[test]
    fn merge_relabels_blank_nodes() {
        let mut a = Graph::new();
        a.insert_terms(Term::blank("b0"), has_affordance(), soma("Opening"))
            .unwrap();
        let mut b = Graph::new();
        b.insert_terms(Term::blank("b0"), has_affordance(), soma("Closing"))
            .unwrap();
        a.merge(&b);
        assert_eq!(a.len(), 2);
        let subjects: HashSet<_> = a.iter().map(|t| t.subject.clone()).collect();
        assert_eq!(subjects.len(), 2);
    }
}
