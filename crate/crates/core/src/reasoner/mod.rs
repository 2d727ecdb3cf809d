//! Competency questions over a loaded knowledge base: what an activity
//! involves, what it requires, and which robots can carry it out.

mod feasibility;
mod kb;
mod tasks;

pub use feasibility::{
    CapabilityChain, CapabilityProfile, FeasibilityMatrix, FeasibilityReport, Gap, MatrixRow,
    ProcedureGap,
};
pub use kb::{KnowledgeBase, ReasonerError};
pub use tasks::{ActionPlan, ProcedurePlan, StepPlan, TaskPlan};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Term;
    use crate::turtle::parse_turtle;

    const HEADER: &str = "@prefix : <https://example.org/> .
@prefix obot: <https://w3id.org/onto-bot#> .
@prefix soma: <http://www.ease-crc.org/ont/SOMA.owl#> .
@prefix pko: <https://w3id.org/pko#> .
@prefix pplan: <http://purl.org/net/p-plan#> .
@prefix prov: <http://www.w3.org/ns/prov#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
:act a prov:Activity ; rdfs:label \"Act\" ; pko:executesProcedure :proc .
:proc a pko:Procedure ; rdfs:label \"Proc\" ; pko:hasStep :step .
:step a pplan:Step ; rdfs:label \"Step\" .
";

    fn kb(body: &str) -> KnowledgeBase {
        KnowledgeBase::from_graph(parse_turtle(&format!("{HEADER}{body}")).unwrap())
    }

    fn ex(local: &str) -> Term {
        Term::iri(format!("https://example.org/{local}"))
    }

    #[test]
    fn single_action_without_chain() {
        let kb = kb(":step pko:requiresAction :a1 .
            :a1 a pko:Action ; rdfs:label \"Only\" ; obot:requiresAffordance soma:Grasping .");
        let plan = kb.cq2_task_plan("Act").unwrap();
        assert_eq!(plan.procedures[0].steps[0].action_labels(), vec!["Only"]);
    }

    #[test]
    fn chain_follows_next_action_not_document_order() {
        let kb = kb(":step pko:requiresAction :a3 , :a1 , :a2 .
            :a1 rdfs:label \"one\" ; obot:requiresAffordance soma:Grasping ; obot:nextAction :a2 .
            :a2 rdfs:label \"two\" ; obot:requiresAffordance soma:Holding ; obot:nextAction :a3 .
            :a3 rdfs:label \"three\" ; obot:requiresAffordance soma:Placing .");
        let plan = kb.cq2_task_plan("Act").unwrap();
        assert_eq!(
            plan.procedures[0].steps[0].action_labels(),
            vec!["one", "two", "three"]
        );
    }

    #[test]
    fn cyclic_chain_is_structural_error() {
        let kb = kb(":step pko:requiresAction :a1 , :a2 .
            :a1 obot:requiresAffordance soma:Grasping ; obot:nextAction :a2 .
            :a2 obot:requiresAffordance soma:Holding ; obot:nextAction :a1 .");
        let err = kb.cq2_task_plan("Act").unwrap_err();
        assert!(
            matches!(err, ReasonerError::BrokenChain { property, .. } if property.ends_with("nextAction"))
        );
    }

    #[test]
    fn forked_chain_is_structural_error() {
        let kb = kb(":step pko:requiresAction :a1 , :a2 , :a3 .
            :a1 obot:requiresAffordance soma:Grasping ; obot:nextAction :a2 , :a3 .
            :a2 obot:requiresAffordance soma:Holding .
            :a3 obot:requiresAffordance soma:Holding .");
        let err = kb.cq2_task_plan("Act").unwrap_err();
        assert!(err.to_string().contains("forks"), "{err}");
    }

    #[test]
    fn unchained_actions_are_disconnected() {
        let kb = kb(":step pko:requiresAction :a1 , :a2 .
            :a1 obot:requiresAffordance soma:Grasping .
            :a2 obot:requiresAffordance soma:Holding .");
        assert!(matches!(
            kb.cq2_task_plan("Act"),
            Err(ReasonerError::BrokenChain { .. })
        ));
    }

    #[test]
    fn action_without_affordance_rejected() {
        let kb = kb(":step pko:requiresAction :a1 .");
        assert_eq!(
            kb.cq2_task_plan("Act").unwrap_err(),
            ReasonerError::ActionWithoutAffordance(ex("a1"))
        );
    }

    #[test]
    fn activity_without_actions_requires_nothing() {
        let kb = kb(":tiago a obot:Agent ; rdfs:label \"T\" .");
        assert!(kb.cq3_required_affordances(&ex("act")).unwrap().is_empty());
        assert_eq!(
            kb.cq4_capable_robots(&ex("act")).unwrap(),
            vec![ex("tiago")]
        );
    }

    #[test]
    fn robot_without_nodes_has_empty_profile() {
        let kb = kb(":r a obot:Agent .");
        let profile = kb.capability_profile(&ex("r")).unwrap();
        assert!(profile.enabled.is_empty());
        assert!(kb.cq5_can_execute_all(&ex("r"), &[]).unwrap());
    }

    #[test]
    fn unknown_entities() {
        let kb = kb("");
        match kb.cq1_objects_affordances("Nope").unwrap_err() {
            ReasonerError::ActivityNotFound { available, .. } => assert_eq!(available, vec!["Act"]),
            e => panic!("{e}"),
        }
        assert!(matches!(
            kb.cq3_required_affordances(&ex("proc")),
            Err(ReasonerError::UnknownActivity(_))
        ));
        assert!(matches!(
            kb.capability_profile(&ex("act")),
            Err(ReasonerError::NotAnAgent(_))
        ));
        assert!(matches!(
            kb.robot_by_label("X"),
            Err(ReasonerError::RobotNotFound { .. })
        ));
    }

    #[test]
    fn empty_matrix_without_robots() {
        let kb = kb("");
        let m = kb.feasibility_matrix();
        assert!(m.robots.is_empty());
        assert!(m.rows.iter().all(|r| r.missing.is_empty()));
    }
}
