use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rdf::{Graph, Term, Triple, TripleRef};
use crate::vocab::{dul, obot, pko, pplan, prov, rdfs, ros, soma};

use super::{ClassHierarchy, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// R1: domain and range of the OntoBOT properties.
    DomainRange,
    /// R2: `pko:nextStep` / `obot:nextAction` form simple acyclic chains.
    OrderChain,
    /// R3: every required action names its affordances and at most one target.
    Connectivity,
    /// R4: activities, steps and actions carry an `rdfs:label`.
    Label,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::DomainRange => "R1",
            Rule::OrderChain => "R2",
            Rule::Connectivity => "R3",
            Rule::Label => "R4",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::DomainRange => "domain-range",
            Rule::OrderChain => "order-chain",
            Rule::Connectivity => "connectivity",
            Rule::Label => "label",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.id(), self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Offender {
    Triple(Triple),
    Node(Term),
}

impl fmt::Display for Offender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Offender::Triple(t) => t.fmt(f),
            Offender::Node(n) => n.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub offender: Offender,
    pub message: String,
}

/// Outcome of [`validate`]. Warnings never make a graph invalid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.violations.iter().filter(|v| v.rule == rule).count()
    }
}

/// Checks an instance graph against rules R1 to R4. Type checks follow the
/// subclass closure, so the result does not depend on whether the graph was
/// passed through `infer_types` first.
pub fn validate(graph: &Graph, vocabulary: &Vocabulary) -> ValidationReport {
    let mut v = Validator {
        graph,
        vocabulary,
        hierarchy: ClassHierarchy::new(graph, vocabulary),
        report: ValidationReport::default(),
    };
    v.domain_range();
    v.order_chain(pko::NEXT_STEP, pko::HAS_STEP, "procedure");
    v.order_chain(obot::NEXT_ACTION, pko::REQUIRES_ACTION, "step");
    v.connectivity();
    v.labels();
    v.report
}

struct Validator<'g> {
    graph: &'g Graph,
    vocabulary: &'g Vocabulary,
    hierarchy: ClassHierarchy,
    report: ValidationReport,
}

fn short(iri: &str) -> &str {
    iri.rsplit(['#', '/']).next().unwrap_or(iri)
}

impl<'g> Validator<'g> {
    fn violation(&mut self, rule: Rule, offender: Offender, message: String) {
        self.report.violations.push(Violation {
            rule,
            offender,
            message,
        });
    }

    fn triples(&self, predicate: &str) -> Vec<TripleRef<'g>> {
        self.graph
            .matches(None, Some(&Term::iri(predicate)), None)
            .collect()
    }

    fn has_type(&self, node: &Term, class: &str) -> bool {
        !node.is_literal() && self.hierarchy.has_type(self.graph, node, &Term::iri(class))
    }

    fn is_affordance(&self, node: &Term) -> bool {
        let Some(iri) = node.as_iri() else {
            return false;
        };
        let affordance = Term::iri(soma::AFFORDANCE);
        self.vocabulary.affordances.contains(iri)
            || self.hierarchy.has_type(self.graph, node, &affordance)
            || (node != &affordance && self.hierarchy.is_subclass_of(node, &affordance))
    }

    fn domain_range(&mut self) {
        let checks: [(&str, Option<&str>, Option<&str>); 3] = [
            (obot::ACTS_ON, None, Some(obot::COMPONENT)),
            (obot::HAS_NODE, Some(obot::AGENT), Some(ros::NODE)),
            (
                dul::HAS_COMPONENT,
                Some(obot::ENVIRONMENT),
                Some(obot::COMPONENT),
            ),
        ];
        for (property, domain, range) in checks {
            for t in self.triples(property) {
                if let Some(domain) = domain {
                    if !self.has_type(t.subject, domain) {
                        self.violation(
                            Rule::DomainRange,
                            Offender::Triple(t.to_triple()),
                            format!(
                                "subject of {} is not an instance of {}",
                                short(property),
                                short(domain)
                            ),
                        );
                    }
                }
                if let Some(range) = range {
                    if !self.has_type(t.object, range) {
                        self.violation(
                            Rule::DomainRange,
                            Offender::Triple(t.to_triple()),
                            format!(
                                "object of {} is not an instance of {}",
                                short(property),
                                short(range)
                            ),
                        );
                    }
                }
            }
        }
        for property in [obot::REQUIRES_AFFORDANCE, obot::ENABLES_AFFORDANCE] {
            for t in self.triples(property) {
                if !self.is_affordance(t.object) {
                    self.violation(
                        Rule::DomainRange,
                        Offender::Triple(t.to_triple()),
                        format!("object of {} is not an affordance IRI", short(property)),
                    );
                }
            }
        }
    }

    /// `next` edges must have in- and out-degree at most one, no cycles, and
    /// stay inside one container reached through `member`.
    fn order_chain(&mut self, next: &str, member: &str, container: &str) {
        let edges = self.triples(next);
        let mut succ: BTreeMap<&Term, Vec<&Term>> = BTreeMap::new();
        let mut pred: BTreeMap<&Term, Vec<&Term>> = BTreeMap::new();
        for t in &edges {
            succ.entry(t.subject).or_default().push(t.object);
            pred.entry(t.object).or_default().push(t.subject);
        }
        for (node, out) in &succ {
            if out.len() > 1 {
                self.violation(
                    Rule::OrderChain,
                    Offender::Node((*node).clone()),
                    format!("{} successors via {}", out.len(), short(next)),
                );
            }
        }
        for (node, inc) in &pred {
            if inc.len() > 1 {
                self.violation(
                    Rule::OrderChain,
                    Offender::Node((*node).clone()),
                    format!("{} predecessors via {}", inc.len(), short(next)),
                );
            }
        }
        for cycle in cycles(&succ) {
            let names: Vec<String> = cycle.iter().map(|n| n.to_string()).collect();
            self.violation(
                Rule::OrderChain,
                Offender::Node(cycle[0].clone()),
                format!("{} cycle: {}", short(next), names.join(" -> ")),
            );
        }
        let member = Term::iri(member);
        for t in &edges {
            let from: BTreeSet<&Term> = self
                .graph
                .subjects(&member, t.subject)
                .into_iter()
                .collect();
            let shared = self
                .graph
                .subjects(&member, t.object)
                .into_iter()
                .any(|c| from.contains(c));
            if !shared {
                self.violation(
                    Rule::OrderChain,
                    Offender::Triple(t.to_triple()),
                    format!("{} links nodes that share no {container}", short(next)),
                );
            }
        }
    }

    fn connectivity(&mut self) {
        let requires = Term::iri(obot::REQUIRES_AFFORDANCE);
        let acts_on = Term::iri(obot::ACTS_ON);
        let mut seen = BTreeSet::new();
        for t in self.triples(pko::REQUIRES_ACTION) {
            let action = t.object;
            if !seen.insert(action) {
                continue;
            }
            if self.graph.objects(action, &requires).is_empty() {
                self.violation(
                    Rule::Connectivity,
                    Offender::Node(action.clone()),
                    "action has no obot:requiresAffordance".into(),
                );
            }
            match self.graph.objects(action, &acts_on).len() {
                0 => self.report.warnings.push(Violation {
                    rule: Rule::Connectivity,
                    offender: Offender::Node(action.clone()),
                    message: "action has no obot:actsOn target".into(),
                }),
                1 => {}
                n => self.violation(
                    Rule::Connectivity,
                    Offender::Node(action.clone()),
                    format!("action has {n} obot:actsOn targets"),
                ),
            }
        }
    }

    fn labels(&mut self) {
        let label = Term::iri(rdfs::LABEL);
        let mut seen = BTreeSet::new();
        for class in [prov::ACTIVITY, pplan::STEP, pko::ACTION] {
            for node in self.hierarchy.instances_of(self.graph, &Term::iri(class)) {
                if !seen.insert(node) {
                    continue;
                }
                let labelled = self
                    .graph
                    .objects(node, &label)
                    .iter()
                    .any(|l| l.is_literal());
                if !labelled {
                    self.violation(
                        Rule::Label,
                        Offender::Node(node.clone()),
                        format!("{} has no rdfs:label", short(class)),
                    );
                }
            }
        }
    }
}

/// Strongly connected components that contain a cycle, each listed from its
/// smallest node. Tarjan's algorithm.
fn cycles<'a>(succ: &BTreeMap<&'a Term, Vec<&'a Term>>) -> Vec<Vec<&'a Term>> {
    struct State<'a> {
        index: BTreeMap<&'a Term, usize>,
        low: BTreeMap<&'a Term, usize>,
        stack: Vec<&'a Term>,
        on_stack: BTreeSet<&'a Term>,
        out: Vec<Vec<&'a Term>>,
    }
    fn visit<'a>(n: &'a Term, succ: &BTreeMap<&'a Term, Vec<&'a Term>>, st: &mut State<'a>) {
        let i = st.index.len();
        st.index.insert(n, i);
        st.low.insert(n, i);
        st.stack.push(n);
        st.on_stack.insert(n);
        for &m in succ.get(n).into_iter().flatten() {
            if !st.index.contains_key(m) {
                visit(m, succ, st);
                let lm = st.low[m];
                let ln = st.low.get_mut(n).unwrap();
                *ln = (*ln).min(lm);
            } else if st.on_stack.contains(m) {
                let im = st.index[m];
                let ln = st.low.get_mut(n).unwrap();
                *ln = (*ln).min(im);
            }
        }
        if st.low[n] == st.index[n] {
            let mut component = Vec::new();
            while let Some(m) = st.stack.pop() {
                st.on_stack.remove(m);
                component.push(m);
                if m == n {
                    break;
                }
            }
            let self_loop = succ.get(n).is_some_and(|s| s.contains(&n));
            if component.len() > 1 || self_loop {
                component.sort();
                st.out.push(component);
            }
        }
    }
    let mut st = State {
        index: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        on_stack: BTreeSet::new(),
        out: Vec::new(),
    };
    for &n in succ.keys() {
        if !st.index.contains_key(n) {
            visit(n, succ, &mut st);
        }
    }
    st.out
}
