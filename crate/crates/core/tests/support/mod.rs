//! Random instance generators and independent reference implementations
//! shared by the property and acceptance tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use cbiont::vocab::{owl, rdf, rdfs, xsd};
use cbiont::{
    Filter, Graph, Iri, Literal, PatternTerm, SelectQuery, Term, Triple, TriplePattern, Variable,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn ex(local: &str) -> Iri {
    iri(&format!("http://example.org/{local}"))
}

/// A random literal drawn from strings (with escapes), language strings,
/// integers and custom-typed values.
pub fn random_literal(rng: &mut impl Rng) -> Literal {
    const TEXT: [&str; 8] = ["", "plain", "tab\there", "quote\"d", "back\\slash", "line\nbreak", "caf\u{e9}", "\u{1F600}"];
    let text = *TEXT.choose(rng).unwrap();
    match rng.gen_range(0..5) {
        0 | 1 => Literal::string(text),
        2 => Literal::lang_string(text, ["en", "fr", "en-GB"].choose(rng).unwrap()).unwrap(),
        3 => Literal::typed(rng.gen_range(-50..50).to_string(), xsd::integer()).unwrap(),
        _ => Literal::typed(text, ex("dt")).unwrap(),
    }
}

/// Up to `max` triples over a small vocabulary so that patterns collide.
pub fn random_graph(rng: &mut impl Rng, max: usize) -> Graph {
    let nodes: Vec<Iri> = (0..12).map(|i| ex(&format!("n{i}"))).collect();
    let preds: Vec<Iri> = (0..4).map(|i| ex(&format!("p{i}"))).chain([rdf::type_()]).collect();
    let n = rng.gen_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let s = nodes.choose(rng).unwrap().clone();
        let p = preds.choose(rng).unwrap().clone();
        let o: Term = if rng.gen_bool(0.3) {
            random_literal(rng).into()
        } else {
            nodes.choose(rng).unwrap().clone().into()
        };
        g.insert(Triple::new(s, p, o));
    }
    g
}

/// A random DAG TBox over at most `max_classes` classes with object and
/// data properties, and an ABox using them.
pub struct RandomKb {
    pub schema: Graph,
    pub abox: Graph,
}

pub fn random_kb(rng: &mut impl Rng, max_classes: usize, max_individuals: usize, max_assertions: usize) -> RandomKb {
    let n_classes = rng.gen_range(1..=max_classes);
    let classes: Vec<Iri> = (0..n_classes).map(|i| ex(&format!("C{i}"))).collect();
    let ty = rdf::type_();
    let mut schema = Graph::new();
    for c in &classes {
        schema.insert(Triple::new(c.clone(), ty.clone(), owl::class()));
    }
    // Edges only go from a lower to a higher index under a random
    // relabeling, so the subclass graph is acyclic.
    let mut rank: Vec<usize> = (0..n_classes).collect();
    rank.shuffle(rng);
    for i in 0..n_classes {
        for j in 0..n_classes {
            if rank[i] < rank[j] && rng.gen_bool(0.15) {
                schema.insert(Triple::new(classes[i].clone(), rdfs::sub_class_of(), classes[j].clone()));
            }
        }
    }
    let n_props = rng.gen_range(1..=6);
    let mut object_props = Vec::new();
    let mut data_props = Vec::new();
    for i in 0..n_props {
        let p = ex(&format!("p{i}"));
        let object = rng.gen_bool(0.6);
        schema.insert(Triple::new(
            p.clone(),
            ty.clone(),
            if object { owl::object_property() } else { owl::datatype_property() },
        ));
        if rng.gen_bool(0.6) {
            schema.insert(Triple::new(p.clone(), rdfs::domain(), classes.choose(rng).unwrap().clone()));
        }
        if object {
            if rng.gen_bool(0.6) {
                schema.insert(Triple::new(p.clone(), rdfs::range(), classes.choose(rng).unwrap().clone()));
            }
            object_props.push(p);
        } else {
            if rng.gen_bool(0.5) {
                schema.insert(Triple::new(p.clone(), rdfs::range(), xsd::string()));
            }
            data_props.push(p);
        }
    }

    let n_ind = rng.gen_range(1..=max_individuals);
    let individuals: Vec<Iri> = (0..n_ind).map(|i| ex(&format!("x{i}"))).collect();
    let mut abox = Graph::new();
    for x in &individuals {
        if rng.gen_bool(0.5) {
            abox.insert(Triple::new(x.clone(), ty.clone(), classes.choose(rng).unwrap().clone()));
        }
    }
    for _ in 0..rng.gen_range(0..=max_assertions) {
        let s = individuals.choose(rng).unwrap().clone();
        if !data_props.is_empty() && (object_props.is_empty() || rng.gen_bool(0.3)) {
            let p = data_props.choose(rng).unwrap().clone();
            abox.insert(Triple::new(s, p, Literal::string(format!("v{}", rng.gen_range(0..5)))));
        } else {
            let p = object_props.choose(rng).unwrap().clone();
            abox.insert(Triple::new(s, p, individuals.choose(rng).unwrap().clone()));
        }
    }
    RandomKb { schema, abox }
}

/// Reference materialization: superclass sets by breadth-first search,
/// then one saturation pass over the ABox's typing sources.
pub fn oracle_materialize(abox: &Graph, schema: &Graph) -> Graph {
    let mut all = schema.clone();
    all.extend_from(abox);
    let sub = rdfs::sub_class_of();
    let ty = rdf::type_();

    let mut direct: BTreeMap<Term, Vec<Term>> = BTreeMap::new();
    for t in all.iter().filter(|t| t.predicate == sub) {
        direct.entry(Term::Iri(t.subject.clone())).or_default().push(t.object.clone());
    }
    let ancestors = |c: &Term| -> BTreeSet<Term> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<Term> = VecDeque::from([c.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in direct.get(&x).into_iter().flatten() {
                if seen.insert(y.clone()) {
                    queue.push_back(y.clone());
                }
            }
        }
        seen
    };

    let mut closure = all.clone();
    for c in direct.keys() {
        let Term::Iri(c_iri) = c else { continue };
        for a in ancestors(c) {
            if &a != c {
                closure.insert(Triple::new(c_iri.clone(), sub.clone(), a));
            }
        }
    }

    let mut domains: BTreeMap<Iri, Vec<Term>> = BTreeMap::new();
    let mut ranges: BTreeMap<Iri, Vec<Term>> = BTreeMap::new();
    for t in all.iter() {
        if t.predicate == rdfs::domain() {
            domains.entry(t.subject.clone()).or_default().push(t.object.clone());
        } else if t.predicate == rdfs::range()
            && all.contains(&Triple::new(t.subject.clone(), ty.clone(), owl::object_property()))
        {
            ranges.entry(t.subject.clone()).or_default().push(t.object.clone());
        }
    }

    let mut base_types: BTreeSet<(Iri, Term)> = BTreeSet::new();
    for t in all.iter() {
        if t.predicate == ty {
            base_types.insert((t.subject.clone(), t.object.clone()));
        }
        for c in domains.get(&t.predicate).into_iter().flatten() {
            base_types.insert((t.subject.clone(), c.clone()));
        }
        if let Term::Iri(y) = &t.object {
            for c in ranges.get(&t.predicate).into_iter().flatten() {
                base_types.insert((y.clone(), c.clone()));
            }
        }
    }
    for (x, c) in base_types {
        for a in ancestors(&c) {
            closure.insert(Triple::new(x.clone(), ty.clone(), a));
        }
        closure.insert(Triple::new(x, ty.clone(), c));
    }

    let mut out = abox.clone();
    out.extend(closure.iter().filter(|t| !schema.contains(t)));
    out
}

fn random_constant(rng: &mut impl Rng, g: &Graph, object: bool) -> Term {
    let mut pool: Vec<Term> = Vec::new();
    for t in g.iter() {
        pool.push(t.subject.into());
        pool.push(t.predicate.into());
        if object {
            pool.push(t.object);
        }
    }
    if pool.is_empty() || rng.gen_bool(0.1) {
        return ex("n0").into();
    }
    pool.choose(rng).unwrap().clone()
}

fn pattern_term(rng: &mut impl Rng, g: &Graph, object: bool, var_prob: f64) -> PatternTerm {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    if rng.gen_bool(var_prob) {
        Variable::new(NAMES.choose(rng).unwrap()).into()
    } else {
        random_constant(rng, g, object).into()
    }
}

/// A random 1–3 pattern query over variables `?x ?y ?z` whose constants
/// mostly come from `g`.
pub fn random_query(rng: &mut impl Rng, g: &Graph) -> SelectQuery {
    loop {
        let n = rng.gen_range(1..=3);
        let mut patterns = Vec::new();
        for _ in 0..n {
            let s = pattern_term(rng, g, false, 0.7);
            let p = pattern_term(rng, g, false, 0.4);
            let o = pattern_term(rng, g, true, 0.6);
            patterns.push(TriplePattern { subject: s, predicate: p, object: o });
        }
        let used: BTreeSet<Variable> = patterns.iter().flat_map(|p| p.variables().cloned()).collect();
        let used: Vec<Variable> = used.into_iter().collect();
        let mut projection: Vec<Variable> = used.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
        projection.shuffle(rng);
        let mut filters = Vec::new();
        if !used.is_empty() && rng.gen_bool(0.3) {
            let v = used.choose(rng).unwrap().clone();
            let k = rng.gen_range(1..=3);
            let set: Vec<Term> = (0..k).map(|_| random_constant(rng, g, true)).collect();
            filters.push(if k == 1 {
                Filter::Equality(v, set[0].clone())
            } else {
                Filter::InSet(v, set)
            });
        }
        if let Ok(q) = SelectQuery::new(projection, patterns, filters) {
            return q;
        }
    }
}

/// Reference evaluation: try every assignment of the query's variables to
/// terms of `g`, keep the ones that satisfy everything, project, dedupe and
/// sort. Returns rows as term vectors in projection order.
pub fn oracle_evaluate(q: &SelectQuery, g: &Graph) -> Vec<Vec<Term>> {
    let vars: Vec<Variable> = {
        let set: BTreeSet<Variable> = q.patterns().iter().flat_map(|p| p.variables().cloned()).collect();
        set.into_iter().collect()
    };
    let mut domain: BTreeSet<Term> = BTreeSet::new();
    for t in g.iter() {
        domain.insert(t.subject.into());
        domain.insert(t.predicate.into());
        domain.insert(t.object);
    }
    let domain: Vec<Term> = domain.into_iter().collect();
    let mut rows: BTreeSet<Vec<Term>> = BTreeSet::new();
    let total = domain.len().pow(vars.len() as u32);
    if domain.is_empty() && !vars.is_empty() {
        return Vec::new();
    }
    for mut code in 0..total.max(1) {
        let mut assignment: BTreeMap<&Variable, &Term> = BTreeMap::new();
        for v in &vars {
            assignment.insert(v, &domain[code % domain.len()]);
            code /= domain.len().max(1);
        }
        let value = |t: &PatternTerm| -> Term {
            match t {
                PatternTerm::Term(t) => t.clone(),
                PatternTerm::Var(v) => assignment[v].clone(),
            }
        };
        let holds = q.patterns().iter().all(|p| {
            match (value(&p.subject), value(&p.predicate)) {
                (Term::Iri(s), Term::Iri(pr)) => g.contains(&Triple::new(s, pr, value(&p.object))),
                _ => false,
            }
        });
        let passes = q.filters().iter().all(|f| f.accepts(assignment[f.variable()]));
        if holds && passes {
            rows.insert(q.projection().iter().map(|v| assignment[v].clone()).collect());
        }
    }
    rows.into_iter().collect()
}
