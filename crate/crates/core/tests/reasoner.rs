mod common;

use std::collections::BTreeSet;

use common::{ex, kb, soma};
use ontobot::rdf::Term;
use ontobot::schema::Rule;

fn set<const N: usize>(items: [&str; N]) -> BTreeSet<Term> {
    items.iter().map(|a| soma(a)).collect()
}

const ALL: [&str; 6] = [
    "Grasping", "Holding", "Placing", "Pouring", "Opening", "Closing",
];

#[test]
fn fixtures_are_valid() {
    let kb = kb();
    assert!(kb.report().is_valid(), "{:#?}", kb.report().violations);
    assert!(
        kb.report().warnings.is_empty(),
        "{:#?}",
        kb.report().warnings
    );
    assert_eq!(kb.report().count(Rule::OrderChain), 0);
}

#[test]
fn cq1_breakfast_pairs() {
    let pairs = kb().cq1_objects_affordances("Prepare breakfast").unwrap();
    let of = |object: &str| -> BTreeSet<Term> {
        pairs
            .iter()
            .filter(|(o, _)| *o == ex(object))
            .map(|(_, a)| a.clone())
            .collect()
    };
    assert_eq!(of("drawer"), set(["Opening", "Closing"]));
    assert_eq!(of("bowl"), set(["Grasping", "Holding", "Placing"]));
    assert_eq!(
        of("orangeJuice"),
        set(["Grasping", "Holding", "Placing", "Pouring"])
    );
}

#[test]
fn cq1_unknown_label_lists_available() {
    let err = kb()
        .cq1_objects_affordances("Nonexistent activity")
        .unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("Prepare breakfast") && msg.contains("Reorganise the kitchen"),
        "{msg}"
    );
}

#[test]
fn cq2_serve_food() {
    let plan = kb().cq2_task_plan("Prepare breakfast").unwrap();
    let procs: Vec<&str> = plan.procedures.iter().map(|p| p.label.as_str()).collect();
    assert_eq!(procs, ["Retrieve tableware", "Retrieve food", "Serve food"]);
    let serve = plan.procedure("Serve food").unwrap();
    let steps: Vec<&str> = serve.steps.iter().map(|s| s.label.as_str()).collect();
    assert_eq!(steps, ["Serve milk", "Serve orange juice", "Serve cereal"]);
    assert_eq!(
        serve.step("Serve milk").unwrap().action_labels(),
        ["Grasp the milk", "Pour milk into the bowl", "Put milk down"]
    );
    assert_eq!(
        serve.step("Serve orange juice").unwrap().action_labels(),
        [
            "Grasp the orange juice",
            "Pour the orange juice",
            "Put orange juice down"
        ]
    );
    assert_eq!(
        serve.step("Serve cereal").unwrap().action_labels(),
        [
            "Grasp the cereal box",
            "Pour cereal into the bowl",
            "Put cereal box down"
        ]
    );
    assert!(plan
        .actions()
        .all(|a| !a.affordances.is_empty() && a.target.is_some()));
}

#[test]
fn cq3_required_sets() {
    let kb = kb();
    assert_eq!(
        kb.cq3_required_affordances(&ex("prepareBreakfast"))
            .unwrap(),
        set(ALL)
    );
    assert_eq!(
        kb.cq3_required_affordances(&ex("reorganiseKitchen"))
            .unwrap(),
        set(["Grasping", "Holding", "Placing", "Opening", "Closing"])
    );
}

#[test]
fn capability_profiles() {
    let kb = kb();
    let tiago = kb.capability_profile(&ex("tiago")).unwrap();
    assert_eq!(tiago.enabled, set(ALL));
    assert!(tiago.provenance.values().all(|chains| !chains.is_empty()));
    assert_eq!(
        kb.capability_profile(&ex("ur3")).unwrap().enabled,
        set(["Grasping", "Holding", "Placing", "Pouring"])
    );
    let stretch = kb.capability_profile(&ex("stretch")).unwrap();
    assert!(!stretch.enabled.contains(&soma("Holding")));
    assert!(kb
        .capability_profile(&ex("hsr"))
        .unwrap()
        .enabled
        .contains(&soma("Closing")));
}

#[test]
fn cq4_capable_robots() {
    let kb = kb();
    assert_eq!(
        kb.cq4_capable_robots(&ex("prepareBreakfast")).unwrap(),
        [ex("tiago")]
    );
    assert_eq!(
        kb.cq4_capable_robots(&ex("reorganiseKitchen")).unwrap(),
        [ex("tiago"), ex("hsr")]
    );
}

#[test]
fn cq5_both_activities() {
    let kb = kb();
    let both = [ex("prepareBreakfast"), ex("reorganiseKitchen")];
    let passing: Vec<String> = kb
        .robots()
        .iter()
        .filter(|r| kb.cq5_can_execute_all(r, &both).unwrap())
        .map(|r| kb.label_of(r).unwrap().to_owned())
        .collect();
    assert_eq!(passing, ["TIAGo"]);
}

#[test]
fn cq6_gap_reports() {
    let kb = kb();
    let breakfast = ex("prepareBreakfast");
    let hsr = kb.cq6_gap_report(&ex("hsr"), &breakfast).unwrap();
    let serve = hsr.procedure("Serve food").unwrap();
    assert_eq!(serve.gap.missing, set(["Pouring"]));
    assert!(hsr
        .procedure("Retrieve tableware")
        .unwrap()
        .gap
        .achievable());
    assert!(hsr.procedure("Retrieve food").unwrap().gap.achievable());

    let ur3 = kb.cq6_gap_report(&ex("ur3"), &breakfast).unwrap();
    assert!(ur3.procedure("Serve food").unwrap().gap.achievable());
    for p in ["Retrieve tableware", "Retrieve food"] {
        assert_eq!(
            ur3.procedure(p).unwrap().gap.missing,
            set(["Opening", "Closing"])
        );
    }

    for activity in ["prepareBreakfast", "reorganiseKitchen"] {
        let report = kb.cq6_gap_report(&ex("stretch"), &ex(activity)).unwrap();
        for p in &report.procedures {
            assert!(p.gap.missing.contains(&soma("Holding")), "{}", p.gap.label);
        }
    }
}

#[test]
fn matrix_matches_expected_feasibility() {
    let m = kb().feasibility_matrix();
    let robots: Vec<&str> = m.robots.iter().map(|(_, l)| l.as_str()).collect();
    assert_eq!(robots, ["TIAGo", "HSR", "UR3", "Stretch"]);
    let expected = [
        (
            "Prepare breakfast",
            "Retrieve tableware",
            [true, true, false, false],
        ),
        (
            "Prepare breakfast",
            "Retrieve food",
            [true, true, false, false],
        ),
        (
            "Prepare breakfast",
            "Serve food",
            [true, false, true, false],
        ),
        (
            "Reorganise the kitchen",
            "Put away food",
            [true, true, false, false],
        ),
        (
            "Reorganise the kitchen",
            "Load dishwasher",
            [true, true, false, false],
        ),
    ];
    assert_eq!(m.rows.len(), expected.len());
    for (row, (activity, procedure, cells)) in m.rows.iter().zip(expected) {
        assert_eq!(row.activity_label, activity);
        assert_eq!(row.procedure_label, procedure);
        assert_eq!(row.cells(), cells, "{procedure}");
    }
}

#[test]
fn matrix_agrees_with_gap_reports() {
    let kb = kb();
    let m = kb.feasibility_matrix();
    for row in &m.rows {
        for ((robot, _), missing) in m.robots.iter().zip(&row.missing) {
            let report = kb.cq6_gap_report(robot, &row.activity).unwrap();
            let gap = &report
                .procedures
                .iter()
                .find(|p| p.gap.node == row.procedure)
                .unwrap()
                .gap;
            assert_eq!(&gap.missing, missing);
        }
    }
}

#[test]
fn consistency_and_decomposition() {
    let kb = kb();
    for activity in kb.activities() {
        let required = kb.cq3_required_affordances(&activity).unwrap();
        let capable = kb.cq4_capable_robots(&activity).unwrap();
        for robot in kb.robots() {
            let report = kb.cq6_gap_report(&robot, &activity).unwrap();
            let union: BTreeSet<Term> = report
                .procedures
                .iter()
                .flat_map(|p| p.gap.required.clone())
                .collect();
            assert_eq!(union, required);
            let step_union: BTreeSet<Term> = report
                .procedures
                .iter()
                .flat_map(|p| &p.steps)
                .flat_map(|s| s.required.clone())
                .collect();
            assert_eq!(step_union, required);
            let five = kb
                .cq5_can_execute_all(&robot, std::slice::from_ref(&activity))
                .unwrap();
            assert_eq!(five, capable.contains(&robot));
            assert_eq!(five, report.activity_achievable());
            assert_eq!(five, report.missing().is_empty());
        }
    }
}

/// Checks that the per-procedure required sets chosen for the fixtures
/// reproduce the expected feasibility matrix and activity totals, and enumerates every
/// assignment of affordance subsets that would do the same.
#[test]
fn required_set_assignment_is_consistent() {
    let kb = kb();
    let profiles: Vec<u8> = ["tiago", "hsr", "ur3", "stretch"]
        .iter()
        .map(|r| mask(&kb.capability_profile(&ex(r)).unwrap().enabled))
        .collect();
    let expected: [[bool; 4]; 5] = [
        [true, true, false, false],
        [true, true, false, false],
        [true, false, true, false],
        [true, true, false, false],
        [true, true, false, false],
    ];
    let full = 0b11_1111u8;
    let no_pouring = full & !(1 << 3);
    let fits = |req: u8, row: [bool; 4]| {
        profiles
            .iter()
            .zip(row)
            .all(|(p, ok)| (req & !p == 0) == ok)
    };

    // chosen sets, read off the fixture
    let chosen: Vec<u8> = kb
        .activities()
        .iter()
        .flat_map(|a| kb.cq6_gap_report(&ex("tiago"), a).unwrap().procedures)
        .map(|p| mask(&p.gap.required))
        .collect();
    assert_eq!(chosen.len(), expected.len());
    for (req, row) in chosen.iter().zip(expected) {
        assert!(fits(*req, row));
    }
    assert_eq!(chosen[0] | chosen[1] | chosen[2], full);
    assert_eq!(chosen[3] | chosen[4], no_pouring);

    // every per-row candidate
    let candidates: Vec<Vec<u8>> = expected
        .iter()
        .map(|row| (0..=full).filter(|&req| fits(req, *row)).collect())
        .collect();
    assert!(candidates.iter().all(|c| !c.is_empty()));
    // the chosen sets are the largest candidates in each row
    for (req, cands) in chosen.iter().zip(&candidates) {
        assert!(cands.iter().all(|c| c & !req == 0), "{req:06b} {cands:?}");
    }
    // but not the only consistent choice
    assert!(candidates.iter().any(|c| c.len() > 1));
}

fn mask(set: &BTreeSet<Term>) -> u8 {
    ALL.iter()
        .enumerate()
        .filter(|(_, a)| set.contains(&soma(a)))
        .map(|(i, _)| 1 << i)
        .sum()
}

/// Every triple that some shipped query's solutions pass through is present in the
/// raw fixtures, and the fixtures hold at least that many triples.
#[test]
fn fixtures_cover_query_triples() {
    use ontobot::query::{evaluate, parse_query_with_prefixes, PatternTerm};
    use ontobot::turtle::load_files;

    let raw = load_files(&common::fixture_paths()).unwrap();
    let kb = kb();
    let mut prefixes = ontobot::vocab::standard_prefixes();
    prefixes.extend_missing(kb.graph().prefixes());
    let mut exercised = BTreeSet::new();
    for file in [
        "cq1.rq",
        "cq2.rq",
        "cq3.rq",
        "cq4_required.rq",
        "cq4_robots.rq",
        "cq5_required.rq",
        "cq6_steps.rq",
    ] {
        let mut q = parse_query_with_prefixes(&common::query_file(file), &prefixes).unwrap();
        let mut vars: Vec<String> = q
            .pattern
            .iter()
            .flat_map(|t| t.vars().map(str::to_owned))
            .collect();
        vars.sort();
        vars.dedup();
        q.projection = vars;
        q.distinct = true;
        for s in evaluate(&q, kb.graph()) {
            for t in &q.pattern {
                let bind = |p: &PatternTerm| match p {
                    PatternTerm::Term(t) => t.clone(),
                    PatternTerm::Var(v) => s.get(v).unwrap().clone(),
                };
                exercised.insert((bind(&t.subject), bind(&t.predicate), bind(&t.object)));
            }
        }
    }
    for (s, p, o) in &exercised {
        let t = ontobot::rdf::Triple::new(s.clone(), p.clone(), o.clone()).unwrap();
        assert!(
            raw.contains(&t),
            "query triple not asserted in fixtures: {t}"
        );
    }
    assert!(raw.len() >= exercised.len());
    assert!(exercised.len() >= 280, "{}", exercised.len());
}
