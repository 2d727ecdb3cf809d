use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::Term;
use crate::vocab::{obot, rdf, ros};

use super::{KnowledgeBase, ReasonerError};

/// One path by which a robot comes to enable an affordance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CapabilityChain {
    pub node: Term,
    pub channel: Term,
    pub communication: Term,
    pub message: Term,
    pub capability: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapabilityProfile {
    pub robot: Term,
    pub label: String,
    pub enabled: BTreeSet<Term>,
    pub provenance: BTreeMap<Term, Vec<CapabilityChain>>,
}

/// Required and missing affordances for one procedure or step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub node: Term,
    pub label: String,
    pub required: BTreeSet<Term>,
    pub missing: BTreeSet<Term>,
}

impl Gap {
    pub fn achievable(&self) -> bool {
        self.missing.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureGap {
    pub gap: Gap,
    pub steps: Vec<Gap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub robot: Term,
    pub activity: Term,
    pub procedures: Vec<ProcedureGap>,
}

impl FeasibilityReport {
    pub fn activity_achievable(&self) -> bool {
        self.procedures.iter().all(|p| p.gap.achievable())
    }

    pub fn missing(&self) -> BTreeSet<Term> {
        self.procedures
            .iter()
            .flat_map(|p| p.gap.missing.iter().cloned())
            .collect()
    }

    pub fn procedure(&self, label: &str) -> Option<&ProcedureGap> {
        self.procedures.iter().find(|p| p.gap.label == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub activity: Term,
    pub activity_label: String,
    pub procedure: Term,
    pub procedure_label: String,
    /// Missing affordances per robot, in column order.
    pub missing: Vec<BTreeSet<Term>>,
}

impl MatrixRow {
    pub fn cells(&self) -> Vec<bool> {
        self.missing.iter().map(BTreeSet::is_empty).collect()
    }
}

/// Robots × procedures of every activity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityMatrix {
    pub robots: Vec<(Term, String)>,
    pub rows: Vec<MatrixRow>,
}

impl FeasibilityMatrix {
    pub fn cell(&self, robot_label: &str, procedure_label: &str) -> Option<bool> {
        let col = self.robots.iter().position(|(_, l)| l == robot_label)?;
        let row = self
            .rows
            .iter()
            .find(|r| r.procedure_label == procedure_label)?;
        Some(row.missing[col].is_empty())
    }
}

impl KnowledgeBase {
    pub fn capability_profile(&self, robot: &Term) -> Result<CapabilityProfile, ReasonerError> {
        self.require_agent(robot)?;
        let ros_communication = Term::iri(ros::ROS_COMMUNICATION);
        let type_pred = Term::iri(rdf::TYPE);
        let has_component = Term::iri(ros::HAS_COMPONENT);
        let mut provenance: BTreeMap<Term, Vec<CapabilityChain>> = BTreeMap::new();
        for node in self.objects(robot, obot::HAS_NODE) {
            for channel in self.objects(&node, ros::COMMUNICATES_THROUGH) {
                let communications = self
                    .graph()
                    .subjects(&has_component, &channel)
                    .into_iter()
                    .filter(|c| {
                        self.graph()
                            .matches(Some(c), Some(&type_pred), Some(&ros_communication))
                            .next()
                            .is_some()
                    })
                    .cloned()
                    .collect::<Vec<_>>();
                for communication in communications {
                    for message in self.objects(&communication, ros::HAS_MESSAGE) {
                        for capability in self.objects(&message, ros::EVOKES) {
                            for affordance in self.objects(&capability, obot::ENABLES_AFFORDANCE) {
                                provenance
                                    .entry(affordance)
                                    .or_default()
                                    .push(CapabilityChain {
                                        node: node.clone(),
                                        channel: channel.clone(),
                                        communication: communication.clone(),
                                        message: message.clone(),
                                        capability: capability.clone(),
                                    });
                            }
                        }
                    }
                }
            }
        }
        Ok(CapabilityProfile {
            robot: robot.clone(),
            label: self.display_label(robot),
            enabled: provenance.keys().cloned().collect(),
            provenance,
        })
    }

    /// Robots whose enabled affordances cover everything `activity` requires,
    /// in document order.
    pub fn cq4_capable_robots(&self, activity: &Term) -> Result<Vec<Term>, ReasonerError> {
        let required = self.cq3_required_affordances(activity)?;
        let mut capable = Vec::new();
        for robot in self.robots() {
            if required.is_subset(&self.capability_profile(&robot)?.enabled) {
                capable.push(robot);
            }
        }
        Ok(capable)
    }

    pub fn cq5_can_execute_all(
        &self,
        robot: &Term,
        activities: &[Term],
    ) -> Result<bool, ReasonerError> {
        let enabled = self.capability_profile(robot)?.enabled;
        let mut required = BTreeSet::new();
        for activity in activities {
            required.extend(self.cq3_required_affordances(activity)?);
        }
        Ok(required.is_subset(&enabled))
    }

    pub fn cq6_gap_report(
        &self,
        robot: &Term,
        activity: &Term,
    ) -> Result<FeasibilityReport, ReasonerError> {
        let enabled = self.capability_profile(robot)?.enabled;
        self.require_activity(activity)?;
        Ok(self.gap_report(robot, activity, &enabled))
    }

    fn gap_report(
        &self,
        robot: &Term,
        activity: &Term,
        enabled: &BTreeSet<Term>,
    ) -> FeasibilityReport {
        let gap = |node: &Term, required: BTreeSet<Term>| Gap {
            node: node.clone(),
            label: self.display_label(node),
            missing: required.difference(enabled).cloned().collect(),
            required,
        };
        let procedures = self
            .procedures_of(activity)
            .iter()
            .map(|p| ProcedureGap {
                gap: gap(p, self.required_by_actions(&self.procedure_actions(p))),
                steps: self
                    .steps_of(p)
                    .iter()
                    .map(|s| gap(s, self.required_by_actions(&self.actions_of(s))))
                    .collect(),
            })
            .collect();
        FeasibilityReport {
            robot: robot.clone(),
            activity: activity.clone(),
            procedures,
        }
    }

    pub fn feasibility_matrix(&self) -> FeasibilityMatrix {
        let robots = self.robots();
        let enabled: Vec<BTreeSet<Term>> = robots
            .iter()
            .map(|r| {
                self.capability_profile(r)
                    .map(|p| p.enabled)
                    .unwrap_or_default()
            })
            .collect();
        let mut rows = Vec::new();
        for activity in self.activities() {
            for procedure in self.procedures_of(&activity) {
                let required = self.required_by_actions(&self.procedure_actions(&procedure));
                rows.push(MatrixRow {
                    activity_label: self.display_label(&activity),
                    activity: activity.clone(),
                    procedure_label: self.display_label(&procedure),
                    procedure: procedure.clone(),
                    missing: enabled
                        .iter()
                        .map(|e| required.difference(e).cloned().collect())
                        .collect(),
                });
            }
        }
        FeasibilityMatrix {
            robots: robots
                .into_iter()
                .map(|r| {
                    let label = self.display_label(&r);
                    (r, label)
                })
                .collect(),
            rows,
        }
    }
}
