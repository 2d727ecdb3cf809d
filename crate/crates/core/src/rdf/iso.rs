use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Graph, Term, TripleRef};

/// Whether two graphs are equal up to a bijective renaming of blank nodes.
///
/// Ground triples are compared directly. Blank nodes are partitioned by a
/// structural signature and matched by backtracking inside each partition.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ground_a, blank_a) = split(a);
    let (ground_b, blank_b) = split(b);
    if ground_a.len() != ground_b.len() || ground_a.iter().any(|t| !b.contains(&t.to_triple())) {
        return false;
    }
    if blank_a.is_empty() {
        return true;
    }

    let sig_a = signatures(&blank_a);
    let sig_b = signatures(&blank_b);
    if sig_a.len() != sig_b.len() {
        return false;
    }
    let mut classes_a: BTreeMap<&Vec<String>, Vec<&Term>> = BTreeMap::new();
    for (node, sig) in &sig_a {
        classes_a.entry(sig).or_default().push(node);
    }
    let mut classes_b: BTreeMap<&Vec<String>, Vec<&Term>> = BTreeMap::new();
    for (node, sig) in &sig_b {
        classes_b.entry(sig).or_default().push(node);
    }
    if classes_a.len() != classes_b.len()
        || classes_a
            .iter()
            .any(|(sig, nodes)| classes_b.get(sig).map(Vec::len) != Some(nodes.len()))
    {
        return false;
    }

    // Most constrained (smallest) classes first.
    let mut order: Vec<&Term> = Vec::new();
    let mut sorted: Vec<_> = classes_a.iter().collect();
    sorted.sort_by_key(|(_, nodes)| nodes.len());
    for (_, nodes) in sorted {
        order.extend(nodes.iter().copied());
    }

    let target: HashSet<(Term, Term, Term)> = blank_b
        .iter()
        .map(|t| (t.subject.clone(), t.predicate.clone(), t.object.clone()))
        .collect();
    let mut by_node: HashMap<&Term, Vec<&TripleRef<'_>>> = HashMap::new();
    for t in &blank_a {
        if t.subject.is_blank() {
            by_node.entry(t.subject).or_default().push(t);
        }
        if t.object.is_blank() && t.object != t.subject {
            by_node.entry(t.object).or_default().push(t);
        }
    }

    let mut search = Search {
        order: &order,
        sig_a: &sig_a,
        classes_b: &classes_b,
        by_node: &by_node,
        target: &target,
        mapping: HashMap::new(),
        used: HashSet::new(),
    };
    search.assign(0)
}

fn split<'g>(g: &'g Graph) -> (Vec<TripleRef<'g>>, Vec<TripleRef<'g>>) {
    g.iter()
        .partition(|t| !t.subject.is_blank() && !t.object.is_blank())
}

/// Sorted description of every triple a blank node takes part in, with other
/// blank nodes anonymised.
fn signatures<'g>(triples: &[TripleRef<'g>]) -> HashMap<&'g Term, Vec<String>> {
    let mut sigs: HashMap<&Term, Vec<String>> = HashMap::new();
    let show = |t: &Term| {
        if t.is_blank() {
            "_".to_owned()
        } else {
            t.to_string()
        }
    };
    for t in triples {
        if t.subject.is_blank() {
            let own = if t.object == t.subject {
                "self".to_owned()
            } else {
                show(t.object)
            };
            sigs.entry(t.subject)
                .or_default()
                .push(format!("s {} {}", t.predicate, own));
        }
        if t.object.is_blank() && t.object != t.subject {
            sigs.entry(t.object).or_default().push(format!(
                "o {} {}",
                show(t.subject),
                t.predicate
            ));
        }
    }
    for sig in sigs.values_mut() {
        sig.sort();
    }
    sigs
}

struct Search<'s, 'g> {
    order: &'s [&'g Term],
    sig_a: &'s HashMap<&'g Term, Vec<String>>,
    classes_b: &'s BTreeMap<&'s Vec<String>, Vec<&'g Term>>,
    by_node: &'s HashMap<&'g Term, Vec<&'s TripleRef<'g>>>,
    target: &'s HashSet<(Term, Term, Term)>,
    mapping: HashMap<&'g Term, &'g Term>,
    used: HashSet<&'g Term>,
}

impl<'g> Search<'_, 'g> {
    fn assign(&mut self, depth: usize) -> bool {
        let Some(&node) = self.order.get(depth) else {
            return true;
        };
        let candidates = &self.classes_b[&self.sig_a[node]];
        for &candidate in candidates {
            if self.used.contains(candidate) {
                continue;
            }
            self.mapping.insert(node, candidate);
            self.used.insert(candidate);
            if self.consistent(node) && self.assign(depth + 1) {
                return true;
            }
            self.mapping.remove(node);
            self.used.remove(candidate);
        }
        false
    }

    /// Every triple touching `node` whose blank nodes are all mapped must exist
    /// in the target.
    fn consistent(&self, node: &Term) -> bool {
        let map = |t: &'g Term| -> Option<Term> {
            if t.is_blank() {
                self.mapping.get(t).map(|m| (*m).clone())
            } else {
                Some(t.clone())
            }
        };
        self.by_node.get(node).into_iter().flatten().all(|t| {
            match (map(t.subject), map(t.object)) {
                (Some(s), Some(o)) => self.target.contains(&(s, t.predicate.clone(), o)),
                _ => true,
            }
        })
    }
}
