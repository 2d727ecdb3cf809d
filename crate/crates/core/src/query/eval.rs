use std::collections::{BTreeMap, HashSet};

use crate::rdf::{Graph, TermId};

use super::{PatternTerm, Query, Solution};

/// A pattern position after resolving constants against the graph dictionary.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Const(TermId),
    Var(usize),
}

/// Evaluates `query` against `graph`.
///
/// Patterns are joined left-deep with index lookups; at each step the pattern
/// with the most bound positions goes next. Rows are sorted by the projected
/// terms, column by column.
pub fn evaluate(query: &Query, graph: &Graph) -> Vec<Solution> {
    let mut var_names: Vec<&str> = Vec::new();
    for v in query.pattern.iter().flat_map(|tp| tp.vars()) {
        if !var_names.contains(&v) {
            var_names.push(v);
        }
    }
    let var_index = |name: &str| {
        var_names
            .iter()
            .position(|n| *n == name)
            .expect("collected above")
    };

    let mut patterns: Vec<[Slot; 3]> = Vec::with_capacity(query.pattern.len());
    for tp in &query.pattern {
        let mut slots = [Slot::Var(0); 3];
        for (slot, pos) in slots.iter_mut().zip(tp.positions()) {
            *slot = match pos {
                PatternTerm::Var(v) => Slot::Var(var_index(v)),
                PatternTerm::Term(t) => match graph.term_id(t) {
                    Some(id) => Slot::Const(id),
                    // A constant the graph has never seen cannot match.
                    None => return Vec::new(),
                },
            };
        }
        patterns.push(slots);
    }

    let order = join_order(&patterns, var_names.len());
    let projected: Vec<usize> = query
        .projection
        .iter()
        .map(|name| {
            var_names
                .iter()
                .position(|n| n == name)
                .expect("projected variables occur in the pattern")
        })
        .collect();

    let mut rows: Vec<Vec<TermId>> = Vec::new();
    let mut seen: HashSet<Vec<TermId>> = HashSet::new();
    let mut bindings: Vec<Option<TermId>> = vec![None; var_names.len()];
    join(graph, &order, 0, &mut bindings, &mut |b| {
        let row: Vec<TermId> = projected.iter().map(|&v| b[v].expect("bound")).collect();
        if !query.distinct || seen.insert(row.clone()) {
            rows.push(row);
        }
    });

    let mut solutions: Vec<(Vec<&crate::rdf::Term>, Solution)> = rows
        .into_iter()
        .map(|row| {
            let terms: Vec<_> = row.iter().map(|&id| graph.term(id)).collect();
            let bindings: BTreeMap<_, _> = query
                .projection
                .iter()
                .cloned()
                .zip(terms.iter().map(|t| (*t).clone()))
                .collect();
            (terms, Solution::new(bindings))
        })
        .collect();
    solutions.sort_by(|a, b| a.0.cmp(&b.0));
    solutions.into_iter().map(|(_, s)| s).collect()
}

/// Greedy ordering: repeatedly pick the pattern with the most positions that
/// are constant or bound by earlier patterns. Ties keep textual order.
fn join_order(patterns: &[[Slot; 3]], var_count: usize) -> Vec<[Slot; 3]> {
    let mut bound = vec![false; var_count];
    let mut remaining: Vec<usize> = (0..patterns.len()).collect();
    let mut order = Vec::with_capacity(patterns.len());
    while !remaining.is_empty() {
        let score = |i: usize| {
            patterns[i]
                .iter()
                .filter(|s| match s {
                    Slot::Const(_) => true,
                    Slot::Var(v) => bound[*v],
                })
                .count()
        };
        let (pos, &best) = remaining
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| score(**a).cmp(&score(**b)).then(ib.cmp(ia)))
            .expect("non-empty");
        remaining.remove(pos);
        for slot in patterns[best] {
            if let Slot::Var(v) = slot {
                bound[v] = true;
            }
        }
        order.push(patterns[best]);
    }
    order
}

fn join(
    graph: &Graph,
    patterns: &[[Slot; 3]],
    depth: usize,
    bindings: &mut Vec<Option<TermId>>,
    emit: &mut dyn FnMut(&[Option<TermId>]),
) {
    let Some(pattern) = patterns.get(depth) else {
        emit(bindings);
        return;
    };
    let lookup = |slot: Slot| match slot {
        Slot::Const(id) => Some(id),
        Slot::Var(v) => bindings[v],
    };
    let [s, p, o] = pattern.map(lookup);
    let matches: Vec<[TermId; 3]> = graph.match_ids(s, p, o).collect();
    for triple in matches {
        // Variables this triple binds for the first time, so they can be undone.
        let mut fresh: Vec<usize> = Vec::new();
        let mut ok = true;
        for (slot, value) in pattern.iter().zip(triple) {
            if let Slot::Var(v) = *slot {
                match bindings[v] {
                    Some(existing) if existing != value => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        bindings[v] = Some(value);
                        fresh.push(v);
                    }
                }
            }
        }
        if ok {
            join(graph, patterns, depth + 1, bindings, emit);
        }
        for v in fresh {
            bindings[v] = None;
        }
    }
}
