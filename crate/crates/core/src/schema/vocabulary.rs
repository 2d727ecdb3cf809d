use std::collections::BTreeSet;

use crate::rdf::{Graph, Term};
use crate::turtle::serialize_turtle;
use crate::vocab::{self, dul, foaf, obot, pko, pplan, prov, rdf, rdfs, ros, soma};

/// Classes, properties and subclass axioms the instance graphs are checked
/// against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub classes: BTreeSet<String>,
    pub properties: BTreeSet<String>,
    /// `(sub, super)` pairs.
    pub subclass_axioms: BTreeSet<(String, String)>,
    /// Affordance IRIs usable as values of `obot:requiresAffordance` and
    /// `obot:enablesAffordance`.
    pub affordances: BTreeSet<String>,
}

fn set<'a>(items: impl IntoIterator<Item = &'a str>) -> BTreeSet<String> {
    items.into_iter().map(str::to_owned).collect()
}

impl Vocabulary {
    pub fn ontobot() -> Self {
        let classes = set([
            obot::AGENT,
            obot::ENVIRONMENT,
            obot::COMPONENT,
            obot::AFFORDANCE,
            dul::AGENT,
            dul::PLACE,
            prov::AGENT,
            foaf::AGENT,
            soma::AFFORDANCE,
            soma::PHYSICAL_TASK,
            prov::ACTIVITY,
            pko::PROCEDURE,
            pplan::STEP,
            pko::ACTION,
            ros::NODE,
            ros::COMMUNICATION_COMPONENT,
            ros::MESSAGE,
            ros::CAPABILITY,
            ros::ROS_COMMUNICATION,
        ]);
        let properties = set([
            obot::HAS_NODE,
            obot::ENABLES_AFFORDANCE,
            obot::HAS_AFFORDANCE,
            obot::ACTS_ON,
            obot::REQUIRES_AFFORDANCE,
            obot::NEXT_ACTION,
            dul::HAS_COMPONENT,
            pko::EXECUTES_PROCEDURE,
            pko::HAS_STEP,
            pko::NEXT_STEP,
            pko::REQUIRES_ACTION,
            prov::WAS_ASSOCIATED_WITH,
            ros::COMMUNICATES_THROUGH,
            ros::HAS_COMPONENT,
            ros::HAS_MESSAGE,
            ros::EVOKES,
            rdfs::LABEL,
            rdfs::SUB_CLASS_OF,
            rdf::TYPE,
        ]);
        let subclass_axioms = [
            (obot::AGENT, dul::AGENT),
            (obot::AGENT, prov::AGENT),
            (obot::AGENT, foaf::AGENT),
            (obot::ENVIRONMENT, dul::PLACE),
            (obot::AFFORDANCE, soma::AFFORDANCE),
            (obot::AFFORDANCE, soma::PHYSICAL_TASK),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_owned(), b.to_owned()))
        .collect();
        let affordances = set([
            soma::GRASPING,
            soma::HOLDING,
            soma::PLACING,
            soma::POURING,
            soma::OPENING,
            soma::CLOSING,
        ]);
        Vocabulary {
            classes,
            properties,
            subclass_axioms,
            affordances,
        }
    }

    /// Classes minted in the `obot:` namespace.
    pub fn minted_classes(&self) -> BTreeSet<&str> {
        in_namespace(&self.classes, obot::NS)
    }

    /// Properties minted in the `obot:` namespace.
    pub fn minted_properties(&self) -> BTreeSet<&str> {
        in_namespace(&self.properties, obot::NS)
    }

    /// The vocabulary as RDF: class and property declarations plus
    /// `rdfs:subClassOf` axioms.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        *g.prefixes_mut() = vocab::standard_prefixes();
        let ty = Term::iri(rdf::TYPE);
        for class in &self.classes {
            g.insert_terms(Term::iri(class), ty.clone(), Term::iri(rdfs::CLASS))
                .expect("IRI triple");
        }
        for property in &self.properties {
            g.insert_terms(Term::iri(property), ty.clone(), Term::iri(rdf::PROPERTY))
                .expect("IRI triple");
        }
        for (sub, sup) in &self.subclass_axioms {
            g.insert_terms(
                Term::iri(sub),
                Term::iri(rdfs::SUB_CLASS_OF),
                Term::iri(sup),
            )
            .expect("IRI triple");
        }
        g
    }

    /// Turtle text of [`Vocabulary::to_graph`], as shipped in `ontobot-vocab.ttl`.
    pub fn to_turtle(&self) -> String {
        format!(
            "# OntoBOT vocabulary: classes, properties and subclass axioms.\n{}",
            serialize_turtle(&self.to_graph())
        )
    }
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::ontobot()
    }
}

fn in_namespace<'a>(iris: &'a BTreeSet<String>, ns: &str) -> BTreeSet<&'a str> {
    iris.iter()
        .filter(|iri| iri.starts_with(ns))
        .map(String::as_str)
        .collect()
}
