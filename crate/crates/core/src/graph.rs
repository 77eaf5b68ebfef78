//! In-memory triple store with SPO, POS and OSP indexes.

use std::collections::{BTreeMap, BTreeSet};

use crate::term::{Iri, Term, Triple};

type Spo = BTreeMap<Iri, BTreeMap<Iri, BTreeSet<Term>>>;
type Pos = BTreeMap<Iri, BTreeMap<Term, BTreeSet<Iri>>>;
type Osp = BTreeMap<Term, BTreeMap<Iri, BTreeSet<Iri>>>;

/// Which index a lookup walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

/// A set of triples, indexed three ways.
///
/// Every index is a nested ordered map, so iteration is already in
/// N-Triples rendering order for the index's key order.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    spo: Spo,
    pos: Pos,
    osp: Osp,
    len: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Adds `t`; returns true iff it was absent.
    pub fn insert(&mut self, t: Triple) -> bool {
        let added = self
            .spo
            .entry(t.subject.clone())
            .or_default()
            .entry(t.predicate.clone())
            .or_default()
            .insert(t.object.clone());
        if !added {
            return false;
        }
        self.pos
            .entry(t.predicate.clone())
            .or_default()
            .entry(t.object.clone())
            .or_default()
            .insert(t.subject.clone());
        self.osp
            .entry(t.object)
            .or_default()
            .entry(t.subject)
            .or_default()
            .insert(t.predicate);
        self.len += 1;
        true
    }

    /// Removes `t`; returns true iff it was present.
    pub fn remove(&mut self, t: &Triple) -> bool {
        if !remove_nested(&mut self.spo, &t.subject, &t.predicate, &t.object) {
            return false;
        }
        remove_nested(&mut self.pos, &t.predicate, &t.object, &t.subject);
        remove_nested(&mut self.osp, &t.object, &t.subject, &t.predicate);
        self.len -= 1;
        true
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.spo
            .get(&t.subject)
            .and_then(|m| m.get(&t.predicate))
            .is_some_and(|objects| objects.contains(&t.object))
    }

    /// All triples in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().flat_map(|(s, pm)| {
            pm.iter().flat_map(move |(p, objects)| {
                objects
                    .iter()
                    .map(move |o| Triple::new(s.clone(), p.clone(), o.clone()))
            })
        })
    }

    /// Triples agreeing with every bound position, sorted by the N-Triples
    /// rendering of subject, then predicate, then object.
    pub fn match_pattern(
        &self,
        s: Option<&Iri>,
        p: Option<&Iri>,
        o: Option<&Term>,
    ) -> Vec<Triple> {
        let index = match (s, p, o) {
            (Some(_), None, Some(_)) => IndexKind::Osp,
            (Some(_), _, _) | (None, None, None) => IndexKind::Spo,
            (None, Some(_), _) => IndexKind::Pos,
            (None, None, Some(_)) => IndexKind::Osp,
        };
        self.match_with_index(index, s, p, o)
    }

    /// Like [`Graph::match_pattern`] but walks the given index, using as
    /// much of the bound prefix as that index allows.
    pub fn match_with_index(
        &self,
        index: IndexKind,
        s: Option<&Iri>,
        p: Option<&Iri>,
        o: Option<&Term>,
    ) -> Vec<Triple> {
        let mut out = Vec::new();
        match index {
            IndexKind::Spo => walk(&self.spo, s, p, o, &mut |a, b, c| {
                out.push(Triple::new(a.clone(), b.clone(), c.clone()))
            }),
            IndexKind::Pos => walk(&self.pos, p, o, s, &mut |b, c, a| {
                out.push(Triple::new(a.clone(), b.clone(), c.clone()))
            }),
            IndexKind::Osp => walk(&self.osp, o, s, p, &mut |c, a, b| {
                out.push(Triple::new(a.clone(), b.clone(), c.clone()))
            }),
        }
        out.sort_unstable();
        out
    }

    /// Objects of `(s, p, ?)`, sorted.
    pub fn objects<'a>(&'a self, s: &Iri, p: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.spo
            .get(s)
            .and_then(|m| m.get(p))
            .into_iter()
            .flat_map(|set| set.iter())
    }

    /// Subjects of `(?, p, o)`, sorted.
    pub fn subjects<'a>(&'a self, p: &Iri, o: &Term) -> impl Iterator<Item = &'a Iri> + 'a {
        self.pos
            .get(p)
            .and_then(|m| m.get(o))
            .into_iter()
            .flat_map(|set| set.iter())
    }

    /// `(s, o)` pairs of every triple with predicate `p`, grouped by object.
    pub fn pairs<'a>(&'a self, p: &Iri) -> impl Iterator<Item = (&'a Iri, &'a Term)> + 'a {
        self.pos
            .get(p)
            .into_iter()
            .flat_map(|m| m.iter().flat_map(|(o, subjects)| subjects.iter().map(move |s| (s, o))))
    }

    /// Distinct predicates, sorted.
    pub fn predicates(&self) -> impl Iterator<Item = &Iri> {
        self.pos.keys()
    }

    /// Adds every triple of `other`; returns how many were new.
    pub fn extend_from(&mut self, other: &Graph) -> usize {
        other.iter().filter(|t| self.insert(t.clone())).count()
    }

    pub fn is_subset_of(&self, other: &Graph) -> bool {
        self.len <= other.len && self.iter().all(|t| other.contains(&t))
    }
}

/// Set equality of the two triple sets.
pub fn graph_equal(a: &Graph, b: &Graph) -> bool {
    a == b
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.spo == other.spo
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

fn remove_nested<A: Ord, B: Ord, C: Ord>(
    map: &mut BTreeMap<A, BTreeMap<B, BTreeSet<C>>>,
    a: &A,
    b: &B,
    c: &C,
) -> bool {
    let Some(inner) = map.get_mut(a) else {
        return false;
    };
    let Some(set) = inner.get_mut(b) else {
        return false;
    };
    if !set.remove(c) {
        return false;
    }
    if set.is_empty() {
        inner.remove(b);
        if inner.is_empty() {
            map.remove(a);
        }
    }
    true
}

fn walk<A: Ord, B: Ord, C: Ord>(
    map: &BTreeMap<A, BTreeMap<B, BTreeSet<C>>>,
    a: Option<&A>,
    b: Option<&B>,
    c: Option<&C>,
    emit: &mut dyn FnMut(&A, &B, &C),
) {
    let mut visit_inner = |ka: &A, inner: &BTreeMap<B, BTreeSet<C>>| {
        let mut visit_set = |kb: &B, set: &BTreeSet<C>| match c {
            Some(kc) => {
                if let Some(kc) = set.get(kc) {
                    emit(ka, kb, kc);
                }
            }
            None => set.iter().for_each(|kc| emit(ka, kb, kc)),
        };
        match b {
            Some(kb) => {
                if let Some((kb, set)) = inner.get_key_value(kb) {
                    visit_set(kb, set);
                }
            }
            None => inner.iter().for_each(|(kb, set)| visit_set(kb, set)),
        }
    };
    match a {
        Some(ka) => {
            if let Some((ka, inner)) = map.get_key_value(ka) {
                visit_inner(ka, inner);
            }
        }
        None => map.iter().for_each(|(ka, inner)| visit_inner(ka, inner)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Literal;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://x/{s}")).unwrap()
    }

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o))
    }

    #[test]
    fn insert_reports_novelty() {
        let mut g = Graph::new();
        assert!(g.insert(t("s", "p", "o")));
        assert_eq!(g.len(), 1);
        assert!(!g.insert(t("s", "p", "o")));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn remove_reports_presence() {
        let mut g = Graph::new();
        assert!(!g.remove(&t("s", "p", "o")));
        g.insert(t("s", "p", "o"));
        assert!(g.remove(&t("s", "p", "o")));
        assert!(g.is_empty());
        assert!(g.insert(t("s", "p", "o")));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn empty_match() {
        assert!(Graph::new().match_pattern(None, None, None).is_empty());
    }

    #[test]
    fn match_each_binding_shape() {
        let mut g = Graph::new();
        g.insert(t("a", "p", "b"));
        g.insert(t("a", "q", "c"));
        g.insert(t("b", "p", "c"));
        g.insert(Triple::new(iri("a"), iri("p"), Literal::string("lit")));
        assert_eq!(g.match_pattern(Some(&iri("a")), None, None).len(), 3);
        assert_eq!(g.match_pattern(None, Some(&iri("p")), None).len(), 3);
        assert_eq!(g.match_pattern(None, None, Some(&iri("c").into())).len(), 2);
        assert_eq!(
            g.match_pattern(Some(&iri("a")), None, Some(&iri("c").into())),
            vec![t("a", "q", "c")]
        );
        assert_eq!(
            g.match_pattern(Some(&iri("b")), Some(&iri("p")), Some(&iri("c").into())),
            vec![t("b", "p", "c")]
        );
        let all = g.match_pattern(None, None, None);
        assert_eq!(all.len(), g.len());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn equality_is_set_equality() {
        let a: Graph = [t("a", "p", "b"), t("b", "p", "c")].into_iter().collect();
        let b: Graph = [t("b", "p", "c"), t("a", "p", "b"), t("a", "p", "b")]
            .into_iter()
            .collect();
        assert!(graph_equal(&a, &b));
        assert!(graph_equal(&Graph::new(), &Graph::new()));
        let mut c = a.clone();
        c.insert(t("x", "y", "z"));
        assert!(!graph_equal(&a, &c));
    }

    #[test]
    fn removal_prunes_empty_index_entries() {
        let mut g = Graph::new();
        g.insert(t("a", "p", "b"));
        g.remove(&t("a", "p", "b"));
        assert_eq!(g, Graph::new());
        assert_eq!(g.predicates().count(), 0);
    }
}
