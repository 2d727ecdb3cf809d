//! Namespace and term IRIs used throughout the crate.

use crate::rdf::{Prefixes, Term};

macro_rules! namespace {
    ($(#[$doc:meta])* $module:ident = $ns:literal { $($name:ident = $local:literal),* $(,)? }) => {
        $(#[$doc])*
        pub mod $module {
            pub const NS: &str = $ns;
            $(pub const $name: &str = concat!($ns, $local);)*
        }
    };
}

namespace!(rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#" {
    TYPE = "type",
    PROPERTY = "Property",
});

namespace!(rdfs = "http://www.w3.org/2000/01/rdf-schema#" {
    LABEL = "label",
    SUB_CLASS_OF = "subClassOf",
    CLASS = "Class",
});

namespace!(xsd = "http://www.w3.org/2001/XMLSchema#" {
    STRING = "string",
});

namespace!(
    /// OntoBOT's own terms.
    obot = "https://w3id.org/onto-bot#" {
    AGENT = "Agent",
    ENVIRONMENT = "Environment",
    COMPONENT = "Component",
    AFFORDANCE = "Affordance",
    HAS_NODE = "hasNode",
    ENABLES_AFFORDANCE = "enablesAffordance",
    HAS_AFFORDANCE = "hasAffordance",
    ACTS_ON = "actsOn",
    REQUIRES_AFFORDANCE = "requiresAffordance",
    NEXT_ACTION = "nextAction",
});

namespace!(dul = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#" {
    AGENT = "Agent",
    PLACE = "Place",
    HAS_COMPONENT = "hasComponent",
});

namespace!(soma = "http://www.ease-crc.org/ont/SOMA.owl#" {
    AFFORDANCE = "Affordance",
    PHYSICAL_TASK = "PhysicalTask",
    GRASPING = "Grasping",
    HOLDING = "Holding",
    PLACING = "Placing",
    POURING = "Pouring",
    OPENING = "Opening",
    CLOSING = "Closing",
});

namespace!(pko = "https://w3id.org/pko#" {
    PROCEDURE = "Procedure",
    ACTION = "Action",
    EXECUTES_PROCEDURE = "executesProcedure",
    HAS_STEP = "hasStep",
    NEXT_STEP = "nextStep",
    REQUIRES_ACTION = "requiresAction",
    HAS_USER_QUESTION_OCCURRENCE = "hasUserQuestionOccurrence",
});

namespace!(pplan = "http://purl.org/net/p-plan#" {
    STEP = "Step",
});

namespace!(prov = "http://www.w3.org/ns/prov#" {
    ACTIVITY = "Activity",
    AGENT = "Agent",
    WAS_ASSOCIATED_WITH = "wasAssociatedWith",
});

namespace!(foaf = "http://xmlns.com/foaf/0.1/" {
    AGENT = "Agent",
});

namespace!(ros = "http://data.mksmart.org/onto-ros/class#" {
    NODE = "Node",
    COMMUNICATION_COMPONENT = "CommunicationComponent",
    MESSAGE = "Message",
    CAPABILITY = "Capability",
    ROS_COMMUNICATION = "ROSCommunication",
    COMMUNICATES_THROUGH = "communicatesThrough",
    HAS_COMPONENT = "hasComponent",
    HAS_MESSAGE = "hasMessage",
    EVOKES = "evokes",
});

/// Namespace used for case-study instances.
pub const EXAMPLE_NS: &str = "https://example.org/";

/// The prefixes the bundled queries and knowledge graphs are written against.
pub fn standard_prefixes() -> Prefixes {
    [
        ("", EXAMPLE_NS),
        ("rdf", rdf::NS),
        ("rdfs", rdfs::NS),
        ("xsd", xsd::NS),
        ("obot", obot::NS),
        ("dul", dul::NS),
        ("soma", soma::NS),
        ("pko", pko::NS),
        ("pplan", pplan::NS),
        ("prov", prov::NS),
        ("foaf", foaf::NS),
        ("ros", ros::NS),
    ]
    .into_iter()
    .collect()
}

/// Shorthand for an IRI term.
pub fn iri(iri: &str) -> Term {
    Term::iri(iri)
}
