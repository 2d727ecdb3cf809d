use std::path::Path;

use thiserror::Error;

use crate::rdf::{Graph, Term};
use crate::schema::{infer_types, validate, ValidationReport, Vocabulary};
use crate::turtle::{load_files, LoadError};
use crate::vocab::{obot, pko, prov, rdf, rdfs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReasonerError {
    #[error("activity not found: '{label}' (available: {})", .available.join(", "))]
    ActivityNotFound {
        label: String,
        available: Vec<String>,
    },
    #[error("robot not found: '{label}' (available: {})", .available.join(", "))]
    RobotNotFound {
        label: String,
        available: Vec<String>,
    },
    #[error("label '{label}' names {count} activities")]
    AmbiguousLabel { label: String, count: usize },
    #[error("not an activity: {0}")]
    UnknownActivity(Term),
    #[error("not an agent: {0}")]
    NotAnAgent(Term),
    #[error("broken {property} chain under {container}: {reason}")]
    BrokenChain {
        property: &'static str,
        container: Term,
        reason: String,
    },
    #[error("action {0} requires no affordance")]
    ActionWithoutAffordance(Term),
}

/// The merged activity and robot graphs with the subclass closure
/// materialised. Read-only once built.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    graph: Graph,
    vocabulary: Vocabulary,
    report: ValidationReport,
}

impl KnowledgeBase {
    pub fn from_graph(graph: Graph) -> Self {
        Self::with_vocabulary(graph, Vocabulary::ontobot())
    }

    pub fn with_vocabulary(graph: Graph, vocabulary: Vocabulary) -> Self {
        let graph = infer_types(&graph, &vocabulary);
        let report = validate(&graph, &vocabulary);
        KnowledgeBase {
            graph,
            vocabulary,
            report,
        }
    }

    pub fn load<P: AsRef<Path>>(paths: &[P]) -> Result<Self, LoadError> {
        load_files(paths).map(Self::from_graph)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// First `rdfs:label` of `node`, by lexical form.
    pub fn label_of(&self, node: &Term) -> Option<&str> {
        self.graph
            .objects(node, &Term::iri(rdfs::LABEL))
            .into_iter()
            .find(|o| o.is_literal())
            .map(|o| o.lexical())
    }

    /// The label, or the IRI itself for unlabelled nodes.
    pub(crate) fn display_label(&self, node: &Term) -> String {
        self.label_of(node)
            .map(str::to_owned)
            .unwrap_or_else(|| node.lexical().to_owned())
    }

    pub fn is_activity(&self, node: &Term) -> bool {
        self.has_type(node, prov::ACTIVITY)
    }

    pub fn is_agent(&self, node: &Term) -> bool {
        self.has_type(node, obot::AGENT)
    }

    fn has_type(&self, node: &Term, class: &str) -> bool {
        self.graph
            .matches(
                Some(node),
                Some(&Term::iri(rdf::TYPE)),
                Some(&Term::iri(class)),
            )
            .next()
            .is_some()
    }

    /// Activities in document order.
    pub fn activities(&self) -> Vec<Term> {
        self.instances(prov::ACTIVITY)
    }

    /// Robots (instances of `obot:Agent`) in document order.
    pub fn robots(&self) -> Vec<Term> {
        self.instances(obot::AGENT)
    }

    fn instances(&self, class: &str) -> Vec<Term> {
        self.graph
            .subjects(&Term::iri(rdf::TYPE), &Term::iri(class))
            .into_iter()
            .cloned()
            .collect()
    }

    fn labelled(&self, candidates: &[Term], label: &str) -> Vec<Term> {
        let label_pred = Term::iri(rdfs::LABEL);
        candidates
            .iter()
            .filter(|c| {
                self.graph
                    .objects(c, &label_pred)
                    .iter()
                    .any(|o| o.is_literal() && o.lexical() == label)
            })
            .cloned()
            .collect()
    }

    fn available_labels(&self, candidates: &[Term]) -> Vec<String> {
        let mut labels: Vec<String> = candidates.iter().map(|c| self.display_label(c)).collect();
        labels.sort();
        labels.dedup();
        labels
    }

    /// Every activity carrying `label`. Never empty on success.
    pub fn activities_by_label(&self, label: &str) -> Result<Vec<Term>, ReasonerError> {
        let all = self.activities();
        let found = self.labelled(&all, label);
        if found.is_empty() {
            return Err(ReasonerError::ActivityNotFound {
                label: label.to_owned(),
                available: self.available_labels(&all),
            });
        }
        Ok(found)
    }

    /// The single activity carrying `label`.
    pub fn activity_by_label(&self, label: &str) -> Result<Term, ReasonerError> {
        let mut found = self.activities_by_label(label)?;
        if found.len() > 1 {
            return Err(ReasonerError::AmbiguousLabel {
                label: label.to_owned(),
                count: found.len(),
            });
        }
        Ok(found.remove(0))
    }

    pub fn robot_by_label(&self, label: &str) -> Result<Term, ReasonerError> {
        let all = self.robots();
        let mut found = self.labelled(&all, label);
        match found.len() {
            0 => Err(ReasonerError::RobotNotFound {
                label: label.to_owned(),
                available: self.available_labels(&all),
            }),
            1 => Ok(found.remove(0)),
            count => Err(ReasonerError::AmbiguousLabel {
                label: label.to_owned(),
                count,
            }),
        }
    }

    pub(crate) fn objects(&self, subject: &Term, predicate: &str) -> Vec<Term> {
        self.graph
            .objects(subject, &Term::iri(predicate))
            .into_iter()
            .cloned()
            .collect()
    }

    pub(crate) fn procedures_of(&self, activity: &Term) -> Vec<Term> {
        self.objects(activity, pko::EXECUTES_PROCEDURE)
    }

    pub(crate) fn steps_of(&self, procedure: &Term) -> Vec<Term> {
        self.objects(procedure, pko::HAS_STEP)
    }

    pub(crate) fn actions_of(&self, step: &Term) -> Vec<Term> {
        self.objects(step, pko::REQUIRES_ACTION)
    }

    pub(crate) fn require_activity(&self, activity: &Term) -> Result<(), ReasonerError> {
        if self.is_activity(activity) {
            Ok(())
        } else {
            Err(ReasonerError::UnknownActivity(activity.clone()))
        }
    }

    pub(crate) fn require_agent(&self, robot: &Term) -> Result<(), ReasonerError> {
        if self.is_agent(robot) {
            Ok(())
        } else {
            Err(ReasonerError::NotAnAgent(robot.clone()))
        }
    }
}
