use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::rdf::{Graph, Term};
use crate::vocab::{rdf, rdfs};

use super::Vocabulary;

/// Reflexive-transitive closure of the subclass relation, built from the
/// vocabulary axioms together with the `rdfs:subClassOf` triples of a graph.
#[derive(Debug, Clone, Default)]
pub struct ClassHierarchy {
    supers: HashMap<Term, BTreeSet<Term>>,
}

impl ClassHierarchy {
    pub fn new(graph: &Graph, vocabulary: &Vocabulary) -> Self {
        let mut direct: HashMap<Term, Vec<Term>> = HashMap::new();
        for (sub, sup) in &vocabulary.subclass_axioms {
            direct
                .entry(Term::iri(sub))
                .or_default()
                .push(Term::iri(sup));
        }
        for t in graph.matches(None, Some(&Term::iri(rdfs::SUB_CLASS_OF)), None) {
            if !t.object.is_literal() {
                direct
                    .entry(t.subject.clone())
                    .or_default()
                    .push(t.object.clone());
            }
        }

        let mut supers = HashMap::with_capacity(direct.len());
        for class in direct.keys() {
            let mut seen = BTreeSet::from([class.clone()]);
            let mut queue = VecDeque::from([class]);
            while let Some(c) = queue.pop_front() {
                for sup in direct.get(c).into_iter().flatten() {
                    if seen.insert(sup.clone()) {
                        queue.push_back(sup);
                    }
                }
            }
            supers.insert(class.clone(), seen);
        }
        ClassHierarchy { supers }
    }

    /// `class` and every class it is a subclass of, directly or not.
    pub fn superclasses<'a>(&'a self, class: &'a Term) -> Box<dyn Iterator<Item = &'a Term> + 'a> {
        match self.supers.get(class) {
            Some(all) => Box::new(all.iter()),
            None => Box::new(std::iter::once(class)),
        }
    }

    pub fn is_subclass_of(&self, sub: &Term, sup: &Term) -> bool {
        sub == sup || self.supers.get(sub).is_some_and(|s| s.contains(sup))
    }

    /// Whether `node` has an `rdf:type` that is `class` or one of its subclasses.
    pub fn has_type(&self, graph: &Graph, node: &Term, class: &Term) -> bool {
        graph
            .objects(node, &Term::iri(rdf::TYPE))
            .into_iter()
            .any(|c| self.is_subclass_of(c, class))
    }

    /// Every node whose type is `class` or one of its subclasses, in graph order.
    pub fn instances_of<'g>(&self, graph: &'g Graph, class: &Term) -> Vec<&'g Term> {
        let mut seen = std::collections::HashSet::new();
        graph
            .matches(None, Some(&Term::iri(rdf::TYPE)), None)
            .filter(|t| self.is_subclass_of(t.object, class))
            .map(|t| t.subject)
            .filter(|s| seen.insert(*s))
            .collect()
    }
}

/// Materialises `rdf:type` along the subclass closure: for every `x a C` and
/// every `C ⊑* D`, adds `x a D`.
///
/// One pass reaches the fixpoint because the closure is already transitive and
/// no subclass triples are produced.
pub fn infer_types(graph: &Graph, vocabulary: &Vocabulary) -> Graph {
    let hierarchy = ClassHierarchy::new(graph, vocabulary);
    let ty = Term::iri(rdf::TYPE);
    let mut out = graph.clone();
    let typed: Vec<(Term, Term)> = graph
        .matches(None, Some(&ty), None)
        .map(|t| (t.subject.clone(), t.object.clone()))
        .collect();
    for (node, class) in typed {
        for sup in hierarchy.superclasses(&class) {
            out.insert_terms(node.clone(), ty.clone(), sup.clone())
                .expect("subject came from a stored triple");
        }
    }
    out
}
