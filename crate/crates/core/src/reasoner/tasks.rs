use std::collections::{BTreeSet, HashMap, HashSet};

use crate::rdf::Term;
use crate::vocab::{obot, pko};

use super::{KnowledgeBase, ReasonerError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskPlan {
    pub activity: Term,
    pub label: String,
    pub procedures: Vec<ProcedurePlan>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedurePlan {
    pub procedure: Term,
    pub label: String,
    pub steps: Vec<StepPlan>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepPlan {
    pub step: Term,
    pub label: String,
    pub actions: Vec<ActionPlan>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionPlan {
    pub action: Term,
    pub label: String,
    pub target: Option<Term>,
    pub affordances: BTreeSet<Term>,
}

impl TaskPlan {
    pub fn procedure(&self, label: &str) -> Option<&ProcedurePlan> {
        self.procedures.iter().find(|p| p.label == label)
    }

    pub fn actions(&self) -> impl Iterator<Item = &ActionPlan> {
        self.procedures
            .iter()
            .flat_map(|p| &p.steps)
            .flat_map(|s| &s.actions)
    }
}

impl ProcedurePlan {
    pub fn step(&self, label: &str) -> Option<&StepPlan> {
        self.steps.iter().find(|s| s.label == label)
    }
}

impl StepPlan {
    pub fn action_labels(&self) -> Vec<&str> {
        self.actions.iter().map(|a| a.label.as_str()).collect()
    }
}

/// Orders `members` along the `next` relation. The edges among members must
/// form one simple path covering all of them; edges leaving the set are ignored.
pub(crate) fn order_chain(
    kb: &KnowledgeBase,
    container: &Term,
    members: &[Term],
    next: &'static str,
) -> Result<Vec<Term>, ReasonerError> {
    let broken = |reason: String| ReasonerError::BrokenChain {
        property: next,
        container: container.clone(),
        reason,
    };
    let set: HashSet<&Term> = members.iter().collect();
    let mut successor: HashMap<&Term, Term> = HashMap::new();
    let mut has_predecessor: HashSet<Term> = HashSet::new();
    for m in members {
        let mut outs = kb.objects(m, next);
        outs.retain(|o| set.contains(o));
        if outs.len() > 1 {
            return Err(broken(format!("{m} forks to {} successors", outs.len())));
        }
        if let Some(o) = outs.pop() {
            if !has_predecessor.insert(o.clone()) {
                return Err(broken(format!("{o} has several predecessors")));
            }
            successor.insert(m, o);
        }
    }
    let heads: Vec<&Term> = members
        .iter()
        .filter(|m| !has_predecessor.contains(*m))
        .collect();
    match heads.len() {
        0 if members.is_empty() => return Ok(Vec::new()),
        0 => return Err(broken("cycle".into())),
        1 => {}
        n => return Err(broken(format!("{n} disconnected segments"))),
    }
    let mut order = vec![heads[0].clone()];
    while let Some(n) = successor.get(order.last().unwrap()) {
        if order.contains(n) {
            return Err(broken("cycle".into()));
        }
        order.push(n.clone());
    }
    if order.len() != members.len() {
        return Err(broken("cycle".into()));
    }
    Ok(order)
}

impl KnowledgeBase {
    /// Distinct (object, affordance) pairs over the actions of every activity
    /// labelled `activity_label`.
    pub fn cq1_objects_affordances(
        &self,
        activity_label: &str,
    ) -> Result<BTreeSet<(Term, Term)>, ReasonerError> {
        let mut pairs = BTreeSet::new();
        for activity in self.activities_by_label(activity_label)? {
            for action in self.activity_actions(&activity) {
                let targets = self.objects(&action, obot::ACTS_ON);
                let affordances = self.objects(&action, obot::REQUIRES_AFFORDANCE);
                for t in &targets {
                    for a in &affordances {
                        pairs.insert((t.clone(), a.clone()));
                    }
                }
            }
        }
        Ok(pairs)
    }

    /// Procedures in document order, steps along `pko:nextStep`, actions along
    /// `obot:nextAction`.
    pub fn cq2_task_plan(&self, activity_label: &str) -> Result<TaskPlan, ReasonerError> {
        let activity = self.activity_by_label(activity_label)?;
        self.task_plan(&activity)
    }

    pub fn task_plan(&self, activity: &Term) -> Result<TaskPlan, ReasonerError> {
        self.require_activity(activity)?;
        let mut procedures = Vec::new();
        for procedure in self.procedures_of(activity) {
            let steps = order_chain(self, &procedure, &self.steps_of(&procedure), pko::NEXT_STEP)?;
            let mut step_plans = Vec::with_capacity(steps.len());
            for step in steps {
                let actions = order_chain(self, &step, &self.actions_of(&step), obot::NEXT_ACTION)?;
                let actions = actions
                    .into_iter()
                    .map(|a| self.action_plan(a))
                    .collect::<Result<Vec<_>, _>>()?;
                step_plans.push(StepPlan {
                    label: self.display_label(&step),
                    step,
                    actions,
                });
            }
            procedures.push(ProcedurePlan {
                label: self.display_label(&procedure),
                procedure,
                steps: step_plans,
            });
        }
        Ok(TaskPlan {
            label: self.display_label(activity),
            activity: activity.clone(),
            procedures,
        })
    }

    fn action_plan(&self, action: Term) -> Result<ActionPlan, ReasonerError> {
        let affordances: BTreeSet<Term> = self
            .objects(&action, obot::REQUIRES_AFFORDANCE)
            .into_iter()
            .collect();
        if affordances.is_empty() {
            return Err(ReasonerError::ActionWithoutAffordance(action));
        }
        Ok(ActionPlan {
            label: self.display_label(&action),
            target: self.objects(&action, obot::ACTS_ON).into_iter().next(),
            affordances,
            action,
        })
    }

    /// Union of `obot:requiresAffordance` over every action of `activity`.
    pub fn cq3_required_affordances(
        &self,
        activity: &Term,
    ) -> Result<BTreeSet<Term>, ReasonerError> {
        self.require_activity(activity)?;
        Ok(self.required_by_actions(&self.activity_actions(activity)))
    }

    pub(crate) fn required_by_actions(&self, actions: &[Term]) -> BTreeSet<Term> {
        actions
            .iter()
            .flat_map(|a| self.objects(a, obot::REQUIRES_AFFORDANCE))
            .collect()
    }

    pub(crate) fn activity_actions(&self, activity: &Term) -> Vec<Term> {
        self.procedures_of(activity)
            .iter()
            .flat_map(|p| self.procedure_actions(p))
            .collect()
    }

    pub(crate) fn procedure_actions(&self, procedure: &Term) -> Vec<Term> {
        self.steps_of(procedure)
            .iter()
            .flat_map(|s| self.actions_of(s))
            .collect()
    }
}
