//! Forward-chaining materialization and constraint validation.
//!
//! Four rules are applied to a fixpoint over `schema ∪ abox`:
//!
//! * R1 `A ⊑ B ∧ B ⊑ C ⇒ A ⊑ C`
//! * R2 `x a A ∧ A ⊑ B ⇒ x a B`
//! * R3 `x p y ∧ domain(p, C) ⇒ x a C`
//! * R4 `x p y ∧ range(p, C) ∧ p is an object property ⇒ y a C`
//!
//! Reflexive `A ⊑ A` triples are never produced; cyclic hierarchies are
//! rejected up front.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde_json::json;

use crate::graph::Graph;
use crate::schema::{self, terms};
use crate::term::{Iri, Literal, Term, Triple};
use crate::vocab::{self, owl, rdf, rdfs, XSD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InferenceRule {
    SubclassTransitivity,
    TypePropagation,
    DomainTyping,
    RangeTyping,
}

impl InferenceRule {
    pub const ALL: [InferenceRule; 4] = [
        InferenceRule::SubclassTransitivity,
        InferenceRule::TypePropagation,
        InferenceRule::DomainTyping,
        InferenceRule::RangeTyping,
    ];

    pub fn id(self) -> &'static str {
        match self {
            InferenceRule::SubclassTransitivity => "R1_subclass_transitivity",
            InferenceRule::TypePropagation => "R2_type_propagation",
            InferenceRule::DomainTyping => "R3_domain_typing",
            InferenceRule::RangeTyping => "R4_range_typing",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            InferenceRule::SubclassTransitivity => "A subClassOf B, B subClassOf C => A subClassOf C",
            InferenceRule::TypePropagation => "x type A, A subClassOf B => x type B",
            InferenceRule::DomainTyping => "x p y, p domain C => x type C",
            InferenceRule::RangeTyping => "x p y, p range C, p object property => y type C",
        }
    }

    /// Triples this rule derives from `g` that `g` does not already hold.
    fn derive(self, g: &Graph) -> Vec<Triple> {
        let sub = rdfs::sub_class_of();
        let ty = rdf::type_();
        let mut out = Vec::new();
        match self {
            InferenceRule::SubclassTransitivity => {
                for (a, b) in g.pairs(&sub) {
                    let Term::Iri(b) = b else { continue };
                    for c in g.objects(b, &sub) {
                        if c.as_iri() != Some(a) {
                            out.push(Triple::new(a.clone(), sub.clone(), c.clone()));
                        }
                    }
                }
            }
            InferenceRule::TypePropagation => {
                for (x, a) in g.pairs(&ty) {
                    let Term::Iri(a) = a else { continue };
                    for b in g.objects(a, &sub) {
                        out.push(Triple::new(x.clone(), ty.clone(), b.clone()));
                    }
                }
            }
            InferenceRule::DomainTyping => {
                for (p, c) in g.pairs(&rdfs::domain()) {
                    for (x, _) in g.pairs(p) {
                        out.push(Triple::new(x.clone(), ty.clone(), c.clone()));
                    }
                }
            }
            InferenceRule::RangeTyping => {
                let object_property: Term = owl::object_property().into();
                for (p, c) in g.pairs(&rdfs::range()) {
                    if !g.contains(&Triple::new(p.clone(), ty.clone(), object_property.clone())) {
                        continue;
                    }
                    for (_, y) in g.pairs(p) {
                        if let Term::Iri(y) = y {
                            out.push(Triple::new(y.clone(), ty.clone(), c.clone()));
                        }
                    }
                }
            }
        }
        out.retain(|t| !g.contains(t));
        out
    }
}

impl fmt::Display for InferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReasonerError {
    #[error("subclass cycle among {}", render_list(.0))]
    SubclassCycle(Vec<Iri>),
}

fn render_list(items: &[Iri]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

/// `abox` plus everything R1–R4 derive from `schema ∪ abox` that is not
/// already a schema triple.
pub fn materialize(abox: &Graph, schema: &Graph) -> Result<Graph, ReasonerError> {
    materialize_scheduled(abox, schema, |_| InferenceRule::ALL)
}

/// [`materialize`] with a caller-chosen rule order for each round.
///
/// Each round applies the four rules in the order returned by `schedule`
/// for that round number, inserting each rule's output before the next rule
/// runs. Rounds repeat until one adds nothing. The result does not depend
/// on the schedule.
pub fn materialize_scheduled(
    abox: &Graph,
    schema: &Graph,
    mut schedule: impl FnMut(usize) -> [InferenceRule; 4],
) -> Result<Graph, ReasonerError> {
    let mut all = schema.clone();
    all.extend_from(abox);
    if let Some(cycle) = schema::subclass_cycles(&all).into_iter().next() {
        return Err(ReasonerError::SubclassCycle(cycle));
    }
    let mut round = 0;
    loop {
        let mut changed = false;
        for rule in schedule(round) {
            for t in rule.derive(&all) {
                changed |= all.insert(t);
            }
        }
        if !changed {
            break;
        }
        round += 1;
    }
    let mut out = abox.clone();
    out.extend(all.iter().filter(|t| !schema.contains(t)));
    Ok(out)
}

/// Reflexive-transitive subclass test.
pub fn is_subclass_of(a: &Iri, b: &Iri, schema: &Graph) -> bool {
    if a == b {
        return true;
    }
    let sub = rdfs::sub_class_of();
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(c) = queue.pop_front() {
        for sup in g_objects_iri(schema, &c, &sub) {
            if sup == *b {
                return true;
            }
            if seen.insert(sup.clone()) {
                queue.push_back(sup);
            }
        }
    }
    false
}

fn g_objects_iri(g: &Graph, s: &Iri, p: &Iri) -> Vec<Iri> {
    g.objects(s, p).filter_map(|o| o.as_iri().cloned()).collect()
}

/// Sorted individuals `x` with `x rdf:type class` in `materialized`.
pub fn instances_of(class: &Iri, materialized: &Graph) -> Vec<Iri> {
    materialized
        .subjects(&rdf::type_(), &class.clone().into())
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    EnumerationViolation,
    DatatypeViolation,
    UndeclaredTerm,
    MultipleLeafTypes,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::EnumerationViolation => "enumeration_violation",
            ViolationKind::DatatypeViolation => "datatype_violation",
            ViolationKind::UndeclaredTerm => "undeclared_term",
            ViolationKind::MultipleLeafTypes => "multiple_leaf_types",
        }
    }

    /// Enumeration and datatype violations are errors; the rest are warnings.
    pub fn is_error(self) -> bool {
        matches!(
            self,
            ViolationKind::EnumerationViolation | ViolationKind::DatatypeViolation
        )
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub subject: Iri,
    pub kind: ViolationKind,
    pub property: Option<Iri>,
    pub detail: String,
}

impl Violation {
    /// Tab-separated `kind subject property detail`; `-` for no property.
    pub fn to_line(&self) -> String {
        let property = self.property.as_ref().map_or("-".to_owned(), |p| p.to_string());
        format!("{}\t{}\t{}\t{}", self.kind, self.subject, property, self.detail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kind": self.kind.as_str(),
            "subject": self.subject.as_str(),
            "property": self.property.as_ref().map(|p| p.as_str()),
            "detail": self.detail,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Also warn when an individual is typed under two leaves of one hub
    /// class, or a session has two forms, aspects or phases.
    pub pedantic: bool,
}

pub fn validate(abox: &Graph, schema: &Graph) -> Vec<Violation> {
    validate_with(abox, schema, ValidationOptions::default())
}

pub fn validate_with(abox: &Graph, schema: &Graph, options: ValidationOptions) -> Vec<Violation> {
    let mut out = Vec::new();
    let enumerations = schema::enumerations(schema);
    let enumerated: BTreeSet<&Iri> = enumerations.iter().map(|(p, _)| p).collect();

    for (property, allowed) in &enumerations {
        for (subject, value) in abox.pairs(property) {
            let ok = matches!(value, Term::Literal(lit) if allowed.contains(lit));
            if !ok {
                let expected: Vec<String> = allowed.iter().map(Literal::to_ntriples).collect();
                out.push(Violation {
                    subject: subject.clone(),
                    kind: ViolationKind::EnumerationViolation,
                    property: Some(property.clone()),
                    detail: format!("value {value} is not one of {}", expected.join(", ")),
                });
            }
        }
    }

    let data_properties: BTreeSet<Iri> = schema
        .subjects(&rdf::type_(), &owl::datatype_property().into())
        .cloned()
        .collect();
    for property in &data_properties {
        if enumerated.contains(property) {
            continue;
        }
        for range in g_objects_iri(schema, property, &rdfs::range()) {
            if !range.as_str().starts_with(XSD.base) {
                continue;
            }
            for (subject, value) in abox.pairs(property) {
                let ok = matches!(value, Term::Literal(lit) if lit.lang().is_none() && *lit.datatype() == range);
                if !ok {
                    out.push(Violation {
                        subject: subject.clone(),
                        kind: ViolationKind::DatatypeViolation,
                        property: Some(property.clone()),
                        detail: format!("value {value} is not a plain {range} literal"),
                    });
                }
            }
        }
    }

    let declared: BTreeSet<Iri> = [
        owl::object_property(),
        owl::datatype_property(),
        owl::annotation_property(),
    ]
    .into_iter()
    .flat_map(|kind| schema.subjects(&rdf::type_(), &kind.into()).cloned().collect::<Vec<_>>())
    .collect();
    for predicate in abox.predicates() {
        if vocab::is_builtin(predicate) || declared.contains(predicate) {
            continue;
        }
        let uses: Vec<&Iri> = abox.pairs(predicate).map(|(s, _)| s).collect();
        let first = uses.iter().min().expect("predicate has at least one use");
        out.push(Violation {
            subject: (*first).clone(),
            kind: ViolationKind::UndeclaredTerm,
            property: Some(predicate.clone()),
            detail: format!("predicate is not declared in the schema ({} use(s))", uses.len()),
        });
    }

    if options.pedantic {
        out.extend(multi_leaf_warnings(abox, schema));
    }
    out.sort();
    out
}

fn multi_leaf_warnings(abox: &Graph, schema: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    let hubs = [terms::cbi_form(), terms::cbi_research_aspect(), terms::cbi_phase()];
    let mut types: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for (x, c) in abox.pairs(&rdf::type_()) {
        if let Term::Iri(c) = c {
            types.entry(x).or_default().insert(c);
        }
    }
    for hub in &hubs {
        let leaves: BTreeSet<Iri> = schema::direct_subclasses(schema, hub).into_iter().collect();
        for (x, classes) in &types {
            let hits: Vec<String> = classes
                .iter()
                .filter(|c| leaves.contains(**c))
                .map(|c| c.to_string())
                .collect();
            if hits.len() > 1 {
                out.push(Violation {
                    subject: (*x).clone(),
                    kind: ViolationKind::MultipleLeafTypes,
                    property: None,
                    detail: format!("typed under several {hub} leaves: {}", hits.join(", ")),
                });
            }
        }
    }
    for property in [terms::has_type(), terms::belongs_to(), terms::associated_with()] {
        let mut targets: BTreeMap<&Iri, Vec<&Term>> = BTreeMap::new();
        for (s, o) in abox.pairs(&property) {
            targets.entry(s).or_default().push(o);
        }
        for (s, objects) in targets {
            if objects.len() > 1 {
                out.push(Violation {
                    subject: s.clone(),
                    kind: ViolationKind::MultipleLeafTypes,
                    property: Some(property.clone()),
                    detail: format!("{} distinct values", objects.len()),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{build_schema, external};
    use crate::vocab::{xsd, CBIDATA, CBIONT};

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://t/{s}")).unwrap()
    }

    fn sub(a: &str, b: &str) -> Triple {
        Triple::new(iri(a), rdfs::sub_class_of(), iri(b))
    }

    fn ty(x: &Iri, c: Iri) -> Triple {
        Triple::new(x.clone(), rdf::type_(), c)
    }

    #[test]
    fn three_chain() {
        let tbox: Graph = [sub("A", "B"), sub("B", "C")].into_iter().collect();
        let abox: Graph = [ty(&iri("x"), iri("A"))].into_iter().collect();
        let out = materialize(&abox, &tbox).unwrap();
        let expected: Graph = [
            ty(&iri("x"), iri("A")),
            sub("A", "C"),
            ty(&iri("x"), iri("B")),
            ty(&iri("x"), iri("C")),
        ]
        .into_iter()
        .collect();
        assert_eq!(out, expected);
    }

    #[test]
    fn owned_by_types_both_ends() {
        let schema = build_schema();
        let (s, w) = (CBIDATA.term("session/s"), CBIDATA.term("agent/w"));
        let abox: Graph = [Triple::new(s.clone(), terms::owned_by(), w.clone())]
            .into_iter()
            .collect();
        let out = materialize(&abox, &schema).unwrap();
        assert!(out.contains(&ty(&s, terms::cbi_session())));
        assert!(out.contains(&ty(&w, terms::collaborator())));
        // CBI_Session is a temporal-spatial session.
        assert!(out.contains(&ty(&s, terms::temporal_spatial_session())));
    }

    #[test]
    fn cyclic_schema_rejected() {
        let tbox: Graph = [sub("A", "B"), sub("B", "A")].into_iter().collect();
        assert_eq!(
            materialize(&Graph::new(), &tbox),
            Err(ReasonerError::SubclassCycle(vec![iri("A"), iri("B")]))
        );
    }

    #[test]
    fn no_reflexive_subclass_triples() {
        let out = materialize(&Graph::new(), &build_schema()).unwrap();
        for t in out.match_pattern(None, Some(&rdfs::sub_class_of()), None) {
            assert_ne!(Term::Iri(t.subject.clone()), t.object);
        }
    }

    #[test]
    fn subclass_queries() {
        let schema = build_schema();
        let x = iri("X");
        assert!(is_subclass_of(&x, &x, &Graph::new()));
        assert!(is_subclass_of(&external::person(), &terms::collaborator(), &schema));
        assert!(!is_subclass_of(&CBIONT.term("General_Discussion"), &terms::cbi_phase(), &schema));
        assert!(!is_subclass_of(&terms::collaborator(), &external::person(), &schema));
    }

    #[test]
    fn instances_follow_type_propagation() {
        assert!(instances_of(&iri("C"), &Graph::new()).is_empty());
        let p = CBIDATA.term("agent/p");
        let abox: Graph = [ty(&p, external::person())].into_iter().collect();
        let out = materialize(&abox, &build_schema()).unwrap();
        assert_eq!(instances_of(&terms::collaborator(), &out), vec![p]);
    }

    fn remark_with(kind: Literal) -> Graph {
        [Triple::new(CBIDATA.term("r"), terms::has_remark(), kind)]
            .into_iter()
            .collect()
    }

    #[test]
    fn enumeration_checks() {
        let schema = build_schema();
        assert!(validate(&remark_with(Literal::string("Comment")), &schema).is_empty());
        for bad in ["Note", "question"] {
            let v = validate(&remark_with(Literal::string(bad)), &schema);
            assert_eq!(v.len(), 1, "{bad}");
            assert_eq!(v[0].kind, ViolationKind::EnumerationViolation);
            assert_eq!(v[0].subject, CBIDATA.term("r"));
            assert!(v[0].detail.contains(&format!("\"{bad}\"")));
        }
        let tagged = Literal::lang_string("Comment", "en").unwrap();
        assert_eq!(validate(&remark_with(tagged), &schema).len(), 1);
    }

    #[test]
    fn description_must_be_plain_string() {
        let schema = build_schema();
        let r = CBIDATA.term("r");
        let ok: Graph = [Triple::new(r.clone(), terms::has_description(), Literal::string("text"))]
            .into_iter()
            .collect();
        assert!(validate(&ok, &schema).is_empty());
        let bad: Graph = [Triple::new(
            r.clone(),
            terms::has_description(),
            Literal::typed("3", xsd::integer()).unwrap(),
        )]
        .into_iter()
        .collect();
        let v = validate(&bad, &schema);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::DatatypeViolation);
    }

    #[test]
    fn undeclared_predicates_are_warnings() {
        let schema = build_schema();
        let g: Graph = [
            Triple::new(iri("b"), iri("madeUp"), iri("c")),
            Triple::new(iri("a"), iri("madeUp"), iri("c")),
            Triple::new(iri("a"), rdf::type_(), iri("C")),
        ]
        .into_iter()
        .collect();
        let v = validate(&g, &schema);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::UndeclaredTerm);
        assert_eq!(v[0].subject, iri("a"));
        assert!(!v[0].kind.is_error());
    }

    #[test]
    fn pedantic_multi_leaf() {
        let schema = build_schema();
        let s = CBIDATA.term("session/x");
        let g: Graph = [
            ty(&s, CBIONT.term("Annotation")),
            ty(&s, CBIONT.term("Trend_Analysis")),
        ]
        .into_iter()
        .collect();
        assert!(validate(&g, &schema).is_empty());
        let v = validate_with(&g, &schema, ValidationOptions { pedantic: true });
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::MultipleLeafTypes);
    }

    #[test]
    fn violation_rendering() {
        let v = Violation {
            subject: iri("r"),
            kind: ViolationKind::EnumerationViolation,
            property: Some(terms::has_remark()),
            detail: "d".into(),
        };
        assert_eq!(
            v.to_line(),
            "enumeration_violation\t<http://t/r>\t<http://bi4people.org/ontology/cbiont#hasRemark>\td"
        );
        assert_eq!(
            v.to_json().to_string(),
            r#"{"detail":"d","kind":"enumeration_violation","property":"http://bi4people.org/ontology/cbiont#hasRemark","subject":"http://t/r"}"#
        );
    }
}
