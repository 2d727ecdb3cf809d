//! Seeded random graphs, basic graph patterns and brute-force oracles.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ontobot::query::{PatternTerm, Query, Solution, TriplePattern};
use ontobot::rdf::{Graph, Prefixes, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NS: &str = "https://example.org/";

fn literal_text(rng: &mut ChaCha8Rng) -> String {
    const PIECES: &[&str] = &[
        "milk",
        "Grasp the bowl",
        "",
        " ",
        "say \"hi\"",
        "back\\slash",
        "line\nbreak",
        "tab\there",
        "caf\u{e9}",
        "\u{1F916}",
        "'single'",
        "a#b",
        "<not an iri>",
        "1.5",
        "true",
        "\"\"\"",
        "cr\r",
    ];
    (0..rng.gen_range(1..=2))
        .map(|_| *PIECES.choose(rng).unwrap())
        .collect()
}

fn iri(rng: &mut ChaCha8Rng, kind: &str, i: usize) -> Term {
    match rng.gen_range(0..8) {
        0 => Term::iri(format!("urn:x:{kind}{i}")),
        1 => Term::iri(format!("{NS}path/{kind}/{i}")),
        2 => Term::iri(format!("http://other.org/{kind}#{i}")),
        _ => Term::iri(format!("{NS}{kind}{i}")),
    }
}

/// Term pools a random graph draws from.
pub struct Pools {
    pub nodes: Vec<Term>,
    pub predicates: Vec<Term>,
    pub literals: Vec<Term>,
}

impl Pools {
    pub fn new(rng: &mut ChaCha8Rng, blanks: bool) -> Self {
        let n_nodes = rng.gen_range(1..=30);
        let nodes = (0..n_nodes)
            .map(|i| {
                if blanks && rng.gen_bool(0.25) {
                    Term::blank(format!("n{i}"))
                } else {
                    iri(rng, "n", i)
                }
            })
            .collect();
        let predicates = (0..rng.gen_range(1..=8))
            .map(|i| iri(rng, "p", i))
            .collect();
        let literals = (0..rng.gen_range(0..=10))
            .map(|_| {
                let text = literal_text(rng);
                match rng.gen_range(0..4) {
                    0 => Term::lang_literal(text, *["en", "de", "en-GB"].choose(rng).unwrap()),
                    1 => Term::typed_literal(text, "http://www.w3.org/2001/XMLSchema#string"),
                    _ => Term::literal(text),
                }
            })
            .collect();
        Pools {
            nodes,
            predicates,
            literals,
        }
    }

    fn object(&self, rng: &mut ChaCha8Rng) -> Term {
        if !self.literals.is_empty() && rng.gen_bool(0.3) {
            self.literals.choose(rng).unwrap().clone()
        } else {
            self.nodes.choose(rng).unwrap().clone()
        }
    }
}

/// A graph of at most `max_triples` triples over freshly drawn pools.
pub fn random_graph(rng: &mut ChaCha8Rng, max_triples: usize, blanks: bool) -> (Graph, Pools) {
    let pools = Pools::new(rng, blanks);
    let mut g = Graph::new();
    let mut prefixes = Prefixes::new();
    if rng.gen_bool(0.7) {
        prefixes.insert("", NS);
    }
    if rng.gen_bool(0.5) {
        prefixes.insert("o", "http://other.org/p#");
    }
    *g.prefixes_mut() = prefixes;
    let target = rng.gen_range(0..=max_triples);
    for _ in 0..target * 2 {
        if g.len() >= target {
            break;
        }
        let s = pools.nodes.choose(rng).unwrap().clone();
        let p = pools.predicates.choose(rng).unwrap().clone();
        let o = pools.object(rng);
        g.insert_terms(s, p, o).unwrap();
    }
    (g, pools)
}

/// A BGP of 1 to `max_patterns` patterns. Each pattern after the first shares
/// a variable with an earlier one or carries a constant subject or object, so
/// the brute-force oracle stays tractable.
pub fn random_query(rng: &mut ChaCha8Rng, pools: &Pools, max_patterns: usize) -> Query {
    let vars = ["a", "b", "c", "d", "e"];
    let n = rng.gen_range(1..=max_patterns);
    let mut used: Vec<&str> = Vec::new();
    let mut pattern = Vec::with_capacity(n);
    let node_term = |rng: &mut ChaCha8Rng, allow_literal: bool| -> PatternTerm {
        if allow_literal && !pools.literals.is_empty() && rng.gen_bool(0.2) {
            PatternTerm::Term(pools.literals.choose(rng).unwrap().clone())
        } else if rng.gen_bool(0.05) {
            PatternTerm::Term(Term::iri("urn:absent"))
        } else {
            PatternTerm::Term(pools.nodes.choose(rng).unwrap().clone())
        }
    };
    for i in 0..n {
        let pick_var = |rng: &mut ChaCha8Rng, used: &mut Vec<&str>| -> PatternTerm {
            let v = if !used.is_empty() && rng.gen_bool(0.7) {
                used.choose(rng).copied().unwrap()
            } else {
                vars.choose(rng).copied().unwrap()
            };
            if !used.contains(&v) {
                used.push(v);
            }
            PatternTerm::var(v)
        };
        let before: Vec<&str> = used.clone();
        let mut s = if rng.gen_bool(0.6) {
            pick_var(rng, &mut used)
        } else {
            node_term(rng, false)
        };
        if matches!(s, PatternTerm::Term(Term::Literal(_))) {
            s = node_term(rng, false);
        }
        let p = if rng.gen_bool(0.25) {
            pick_var(rng, &mut used)
        } else {
            PatternTerm::Term(pools.predicates.choose(rng).unwrap().clone())
        };
        let o = if rng.gen_bool(0.6) {
            pick_var(rng, &mut used)
        } else {
            node_term(rng, true)
        };
        let shares = [&s, &p, &o]
            .iter()
            .any(|t| t.as_var().is_some_and(|v| before.contains(&v)));
        let anchored = matches!(s, PatternTerm::Term(_)) || matches!(o, PatternTerm::Term(_));
        let (s, o) = if i > 0 && !shares && !anchored {
            (node_term(rng, false), o)
        } else {
            (s, o)
        };
        pattern.push(TriplePattern::new(s, p, o));
    }
    let mut all: Vec<String> = Vec::new();
    for t in &pattern {
        for v in t.vars() {
            if !all.iter().any(|x| x == v) {
                all.push(v.to_owned());
            }
        }
    }
    let projection = if all.is_empty() {
        Vec::new()
    } else {
        let mut proj: Vec<String> = all.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
        if proj.is_empty() {
            proj.push(all[0].clone());
        }
        proj.shuffle(rng);
        proj
    };
    Query {
        prefixes: Prefixes::new(),
        projection,
        distinct: rng.gen_bool(0.5),
        pattern,
    }
}

/// Nested-loop evaluation over every triple, no indexes. Gives up with `None`
/// once `budget` triple comparisons are spent.
pub fn brute_force(query: &Query, graph: &Graph, budget: usize) -> Option<Vec<Vec<Term>>> {
    let triples: Vec<[Term; 3]> = graph
        .iter()
        .map(|t| [t.subject.clone(), t.predicate.clone(), t.object.clone()])
        .collect();
    let mut spent = 0usize;
    let mut out = Vec::new();
    let mut binding: HashMap<String, Term> = HashMap::new();
    if !walk(
        &query.pattern,
        &triples,
        &mut binding,
        &mut spent,
        budget,
        &mut |b| {
            out.push(
                query
                    .projection
                    .iter()
                    .map(|v| b[v].clone())
                    .collect::<Vec<_>>(),
            );
        },
    ) {
        return None;
    }
    if query.distinct {
        let set: BTreeSet<Vec<Term>> = out.into_iter().collect();
        out = set.into_iter().collect();
    }
    out.sort();
    Some(out)
}

fn walk(
    patterns: &[TriplePattern],
    triples: &[[Term; 3]],
    binding: &mut HashMap<String, Term>,
    spent: &mut usize,
    budget: usize,
    emit: &mut dyn FnMut(&HashMap<String, Term>),
) -> bool {
    let Some((first, rest)) = patterns.split_first() else {
        emit(binding);
        return true;
    };
    for t in triples {
        *spent += 1;
        if *spent > budget {
            return false;
        }
        let mut added = Vec::new();
        let mut ok = true;
        for (pos, term) in first.positions().into_iter().zip(t) {
            match pos {
                PatternTerm::Term(c) => ok = c == term,
                PatternTerm::Var(v) => match binding.get(v) {
                    Some(b) => ok = b == term,
                    None => {
                        binding.insert(v.clone(), term.clone());
                        added.push(v.clone());
                    }
                },
            }
            if !ok {
                break;
            }
        }
        if ok && !walk(rest, triples, binding, spent, budget, emit) {
            return false;
        }
        for v in added {
            binding.remove(&v);
        }
    }
    true
}

/// Rows of `evaluate` output in projection order, sorted.
pub fn rows(query: &Query, solutions: &[Solution]) -> Vec<Vec<Term>> {
    let mut rows: Vec<Vec<Term>> = solutions
        .iter()
        .map(|s| s.row(&query.projection).into_iter().cloned().collect())
        .collect();
    rows.sort();
    rows
}

/// A random subclass relation over at most `max_classes` classes (cycles
/// allowed) plus typed instances. Returns the graph and the direct edges.
pub fn random_lattice(
    rng: &mut ChaCha8Rng,
    max_classes: usize,
) -> (Graph, Vec<Term>, BTreeSet<(usize, usize)>) {
    let n = rng.gen_range(1..=max_classes);
    let classes: Vec<Term> = (0..n).map(|i| Term::iri(format!("{NS}C{i}"))).collect();
    let mut edges = BTreeSet::new();
    let density = rng.gen_range(0.0..0.3);
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(if b > a { density } else { density / 5.0 }) {
                edges.insert((a, b));
            }
        }
    }
    let sub = Term::iri("http://www.w3.org/2000/01/rdf-schema#subClassOf");
    let ty = Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    let mut g = Graph::new();
    for &(a, b) in &edges {
        g.insert_terms(classes[a].clone(), sub.clone(), classes[b].clone())
            .unwrap();
    }
    for i in 0..rng.gen_range(0..=30) {
        let node = Term::iri(format!("{NS}x{i}"));
        for _ in 0..rng.gen_range(1..=2) {
            g.insert_terms(
                node.clone(),
                ty.clone(),
                classes.choose(rng).unwrap().clone(),
            )
            .unwrap();
        }
        if rng.gen_bool(0.3) {
            g.insert_terms(node, Term::iri(format!("{NS}p")), Term::literal("v"))
                .unwrap();
        }
    }
    (g, classes, edges)
}

/// Reflexive-transitive closure by Floyd-Warshall over a boolean matrix.
pub fn closure_matrix(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            for (cell, &r) in row.iter_mut().zip(&via) {
                *cell |= r;
            }
        }
    }
    reach
}

pub fn triple_set(g: &Graph) -> BTreeSet<(Term, Term, Term)> {
    g.iter()
        .map(|t| (t.subject.clone(), t.predicate.clone(), t.object.clone()))
        .collect()
}

pub fn index_of(classes: &[Term]) -> BTreeMap<Term, usize> {
    classes
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect()
}
