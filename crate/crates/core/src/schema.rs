//! The CBIOnt TBox: classes, properties and alignment axioms, built in code.
//!
//! Axioms map onto triples as follows:
//!
//! | axiom | triples |
//! |---|---|
//! | `ClassDecl(c)` | `c a owl:Class` |
//! | `SubClassOf(a, b)` | `a rdfs:subClassOf b` |
//! | `ObjectProperty(p)` | `p a owl:ObjectProperty` |
//! | `DataProperty(p)` | `p a owl:DatatypeProperty` |
//! | `AnnotationProperty(p)` | `p a owl:AnnotationProperty` |
//! | `Domain(p, c)` | `p rdfs:domain c` |
//! | `Range(p, r)` | `p rdfs:range r` |
//! | `DatatypeEnumeration(p, d, [v1..vn])` | `p rdfs:range d`, `d a rdfs:Datatype`, `d owl:oneOf d_list_1`, then `d_list_i rdf:first vi ; rdf:rest d_list_(i+1)` ending in `rdf:nil` |
//! | `Annotation(s, ap, v)` | `s ap v` |
//!
//! Enumeration list nodes are named IRIs because the data model has no blank
//! nodes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use petgraph::algo::tarjan_scc;

use crate::graph::Graph;
use crate::term::{Iri, Literal, Term, Triple};
use crate::vocab::{owl, rdf, rdfs, xsd, CBIONT, XSD};

/// Direct subclasses of `CBI_Form`.
pub const FORM_CLASSES: [&str; 7] = [
    "General_Discussion",
    "Annotation",
    "Report_Centric_Discussion",
    "Visualizing_Behavior",
    "Trend_Analysis",
    "Task_Coordination",
    "Information_Sharing",
];

/// Direct subclasses of `CBI_Research_Aspect`.
pub const ASPECT_CLASSES: [&str; 5] = [
    "Collaborative_Query_Formulation",
    "Collaborative_Source_Discovery",
    "Collaborative_Data_Acquisition",
    "Collaborative_Data_Integration",
    "Collaborative_Data_Presentation",
];

/// Direct subclasses of `CBI_Phase`.
pub const PHASE_CLASSES: [&str; 3] = ["Pre_Decision_Phase", "Decision_Phase", "Post_Decision_Phase"];

/// Allowed `hasRemark` values, in declaration order.
pub const REMARK_KINDS: [&str; 3] = ["Question", "Answer", "Comment"];

/// CBIOnt vocabulary terms.
pub mod terms {
    use crate::term::Iri;
    use crate::vocab::CBIONT;

    macro_rules! cbiont_terms {
        ($($fn_name:ident => $local:literal),* $(,)?) => {
            $(
                pub fn $fn_name() -> Iri {
                    CBIONT.term($local)
                }
            )*
        };
    }

    cbiont_terms! {
        cbi_session => "CBI_Session",
        temporal_spatial_session => "CBI_Temporal_Spatial_Session",
        collaborator => "Collaborator",
        cbi_form => "CBI_Form",
        cbi_research_aspect => "CBI_Research_Aspect",
        cbi_phase => "CBI_Phase",
        remark => "Remark",
        remark_kind => "Remark_Kind",
        owned_by => "owned_by",
        associated_with => "associated_with",
        belongs_to => "belongs_to",
        has_type => "has_type",
        contains_remark => "contains_remark",
        has_location => "has_location",
        has_time => "has_time",
        affiliated_with => "affiliated_with",
        authored_by => "authored_by",
        has_remark => "hasRemark",
        has_description => "hasDescription",
        posted_at => "posted_at",
        extension => "extension",
    }
}

/// External terms used by the schema and the ingestion mapping.
pub mod external {
    use crate::term::Iri;
    use crate::vocab::{FOAF, GEO, TIME};

    pub fn temporal_entity() -> Iri {
        TIME.term("TemporalEntity")
    }
    pub fn interval() -> Iri {
        TIME.term("Interval")
    }
    pub fn instant() -> Iri {
        TIME.term("Instant")
    }
    pub fn in_xsd_date_time() -> Iri {
        TIME.term("inXSDDateTime")
    }
    pub fn spatial_thing() -> Iri {
        GEO.term("SpatialThing")
    }
    pub fn lat() -> Iri {
        GEO.term("lat")
    }
    pub fn long() -> Iri {
        GEO.term("long")
    }
    pub fn agent() -> Iri {
        FOAF.term("Agent")
    }
    pub fn person() -> Iri {
        FOAF.term("Person")
    }
    pub fn group() -> Iri {
        FOAF.term("Group")
    }
    pub fn organization() -> Iri {
        FOAF.term("Organization")
    }
}

/// Typed view of one TBox statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemaAxiom {
    ClassDecl(Iri),
    SubClassOf { sub: Iri, sup: Iri },
    ObjectProperty(Iri),
    DataProperty(Iri),
    AnnotationProperty(Iri),
    Domain { property: Iri, class: Iri },
    Range { property: Iri, range: Iri },
    DatatypeEnumeration { property: Iri, datatype: Iri, allowed: Vec<Literal> },
    Annotation { subject: Iri, property: Iri, value: Term },
}

fn list_node(datatype: &Iri, i: usize) -> Iri {
    Iri::new(format!("{}_list_{i}", datatype.as_str())).expect("list node IRI")
}

/// Triples for a list of axioms.
pub fn encode(axioms: &[SchemaAxiom]) -> Graph {
    let mut g = Graph::new();
    for axiom in axioms {
        match axiom {
            SchemaAxiom::ClassDecl(c) => {
                g.insert(Triple::new(c.clone(), rdf::type_(), owl::class()));
            }
            SchemaAxiom::SubClassOf { sub, sup } => {
                g.insert(Triple::new(sub.clone(), rdfs::sub_class_of(), sup.clone()));
            }
            SchemaAxiom::ObjectProperty(p) => {
                g.insert(Triple::new(p.clone(), rdf::type_(), owl::object_property()));
            }
            SchemaAxiom::DataProperty(p) => {
                g.insert(Triple::new(p.clone(), rdf::type_(), owl::datatype_property()));
            }
            SchemaAxiom::AnnotationProperty(p) => {
                g.insert(Triple::new(p.clone(), rdf::type_(), owl::annotation_property()));
            }
            SchemaAxiom::Domain { property, class } => {
                g.insert(Triple::new(property.clone(), rdfs::domain(), class.clone()));
            }
            SchemaAxiom::Range { property, range } => {
                g.insert(Triple::new(property.clone(), rdfs::range(), range.clone()));
            }
            SchemaAxiom::DatatypeEnumeration {
                property,
                datatype,
                allowed,
            } => {
                g.insert(Triple::new(property.clone(), rdfs::range(), datatype.clone()));
                g.insert(Triple::new(datatype.clone(), rdf::type_(), rdfs::datatype()));
                if allowed.is_empty() {
                    g.insert(Triple::new(datatype.clone(), owl::one_of(), rdf::nil()));
                    continue;
                }
                g.insert(Triple::new(datatype.clone(), owl::one_of(), list_node(datatype, 1)));
                for (i, value) in allowed.iter().enumerate() {
                    let node = list_node(datatype, i + 1);
                    let rest = if i + 1 == allowed.len() {
                        rdf::nil()
                    } else {
                        list_node(datatype, i + 2)
                    };
                    g.insert(Triple::new(node.clone(), rdf::first(), value.clone()));
                    g.insert(Triple::new(node, rdf::rest(), rest));
                }
            }
            SchemaAxiom::Annotation {
                subject,
                property,
                value,
            } => {
                g.insert(Triple::new(subject.clone(), property.clone(), value.clone()));
            }
        }
    }
    g
}

/// Every axiom of the CBIOnt TBox.
pub fn schema_axioms() -> Vec<SchemaAxiom> {
    use external as ext;
    use terms as t;
    use SchemaAxiom as A;

    let cls = |local: &str| CBIONT.term(local);
    let sub = |sub: Iri, sup: Iri| A::SubClassOf { sub, sup };
    let mut ax = Vec::new();

    let hubs = [
        (t::cbi_form(), &FORM_CLASSES[..]),
        (t::cbi_research_aspect(), &ASPECT_CLASSES[..]),
        (t::cbi_phase(), &PHASE_CLASSES[..]),
    ];
    for class in [
        t::cbi_session(),
        t::temporal_spatial_session(),
        t::collaborator(),
        t::remark(),
    ] {
        ax.push(A::ClassDecl(class));
    }
    for (hub, leaves) in &hubs {
        ax.push(A::ClassDecl(hub.clone()));
        for leaf in leaves.iter() {
            ax.push(A::ClassDecl(cls(leaf)));
            ax.push(sub(cls(leaf), hub.clone()));
        }
    }
    for class in [
        ext::temporal_entity(),
        ext::interval(),
        ext::instant(),
        ext::spatial_thing(),
        ext::agent(),
        ext::person(),
        ext::group(),
        ext::organization(),
    ] {
        ax.push(A::ClassDecl(class));
    }

    // Alignment with the reused vocabularies, external class as subclass.
    ax.push(sub(ext::temporal_entity(), t::temporal_spatial_session()));
    ax.push(sub(ext::spatial_thing(), t::temporal_spatial_session()));
    ax.push(sub(ext::agent(), t::collaborator()));
    for member in [ext::person(), ext::group(), ext::organization()] {
        ax.push(sub(member, ext::agent()));
    }
    for temporal in [ext::interval(), ext::instant()] {
        ax.push(sub(temporal, ext::temporal_entity()));
    }
    // Extension: sessions are temporal-spatial things.
    ax.push(sub(t::cbi_session(), t::temporal_spatial_session()));

    let object_properties = [
        (t::owned_by(), t::cbi_session(), t::collaborator()),
        (t::associated_with(), t::cbi_session(), t::cbi_phase()),
        (t::belongs_to(), t::cbi_session(), t::cbi_research_aspect()),
        (t::has_type(), t::cbi_session(), t::cbi_form()),
        (t::contains_remark(), t::cbi_session(), t::remark()),
        (t::has_location(), t::cbi_session(), ext::spatial_thing()),
        (t::has_time(), t::cbi_session(), ext::temporal_entity()),
        (t::affiliated_with(), ext::person(), ext::organization()),
        (t::authored_by(), t::remark(), t::collaborator()),
    ];
    for (property, domain, range) in object_properties {
        ax.push(A::ObjectProperty(property.clone()));
        ax.push(A::Domain {
            property: property.clone(),
            class: domain,
        });
        ax.push(A::Range { property, range });
    }

    ax.push(A::DataProperty(t::has_remark()));
    ax.push(A::Domain {
        property: t::has_remark(),
        class: t::remark(),
    });
    ax.push(A::DatatypeEnumeration {
        property: t::has_remark(),
        datatype: t::remark_kind(),
        allowed: REMARK_KINDS.iter().map(Literal::string).collect(),
    });

    let data_properties = [
        (t::has_description(), t::remark(), xsd::string()),
        (t::posted_at(), t::remark(), xsd::date_time()),
        (ext::lat(), ext::spatial_thing(), xsd::decimal()),
        (ext::long(), ext::spatial_thing(), xsd::decimal()),
        (ext::in_xsd_date_time(), ext::instant(), xsd::date_time()),
    ];
    for (property, domain, range) in data_properties {
        ax.push(A::DataProperty(property.clone()));
        ax.push(A::Domain {
            property: property.clone(),
            class: domain,
        });
        ax.push(A::Range { property, range });
    }

    ax.push(A::AnnotationProperty(t::extension()));
    for extended in [
        t::remark(),
        t::contains_remark(),
        t::has_location(),
        t::has_time(),
        t::affiliated_with(),
        t::authored_by(),
        t::posted_at(),
    ] {
        ax.push(A::Annotation {
            subject: extended,
            property: t::extension(),
            value: Literal::typed("true", xsd::boolean()).expect("boolean").into(),
        });
    }
    ax
}

/// The CBIOnt TBox as a graph.
pub fn build_schema() -> Graph {
    encode(&schema_axioms())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("{triple} references undeclared term {term}")]
    Undeclared { triple: Triple, term: Iri },
    #[error("{0} is not a recognized schema statement")]
    Unrecognized(Triple),
    #[error("enumeration list for {datatype} is malformed at {node}")]
    MalformedList { datatype: Iri, node: Iri },
}

/// All problems found while reading a graph as axioms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{} schema problem(s); first: {}", .0.len(), .0[0])]
pub struct AxiomErrors(pub Vec<AxiomError>);

struct Declarations {
    classes: BTreeSet<Iri>,
    object_properties: BTreeSet<Iri>,
    data_properties: BTreeSet<Iri>,
    annotation_properties: BTreeSet<Iri>,
    datatypes: BTreeSet<Iri>,
}

impl Declarations {
    fn of(g: &Graph) -> Self {
        let typed = |class: Iri| -> BTreeSet<Iri> { g.subjects(&rdf::type_(), &class.into()).cloned().collect() };
        Declarations {
            classes: typed(owl::class()),
            object_properties: typed(owl::object_property()),
            data_properties: typed(owl::datatype_property()),
            annotation_properties: typed(owl::annotation_property()),
            datatypes: typed(rdfs::datatype()),
        }
    }

    fn is_property(&self, p: &Iri) -> bool {
        self.object_properties.contains(p) || self.data_properties.contains(p) || self.annotation_properties.contains(p)
    }

    fn is_datatype(&self, d: &Iri) -> bool {
        self.datatypes.contains(d) || d.as_str().starts_with(XSD.base) || *d == rdfs::literal()
    }
}

/// Walks an `owl:oneOf` list. Returns the values and the triples consumed.
fn read_list(g: &Graph, datatype: &Iri, head: &Term) -> Result<(Vec<Literal>, Vec<Triple>), AxiomError> {
    let mut values = Vec::new();
    let mut used = Vec::new();
    let mut node = head.clone();
    let mut seen = BTreeSet::new();
    while node != Term::Iri(rdf::nil()) {
        let Term::Iri(n) = &node else {
            return Err(AxiomError::MalformedList {
                datatype: datatype.clone(),
                node: datatype.clone(),
            });
        };
        let malformed = || AxiomError::MalformedList {
            datatype: datatype.clone(),
            node: n.clone(),
        };
        if !seen.insert(n.clone()) {
            return Err(malformed());
        }
        let firsts: Vec<&Term> = g.objects(n, &rdf::first()).collect();
        let rests: Vec<&Term> = g.objects(n, &rdf::rest()).collect();
        let ([Term::Literal(value)], [rest]) = (firsts.as_slice(), rests.as_slice()) else {
            return Err(malformed());
        };
        values.push(value.clone());
        used.push(Triple::new(n.clone(), rdf::first(), value.clone()));
        used.push(Triple::new(n.clone(), rdf::rest(), (*rest).clone()));
        node = (*rest).clone();
    }
    Ok((values, used))
}

/// Lossless typed view of a schema graph, sorted.
pub fn axioms(schema: &Graph) -> Result<Vec<SchemaAxiom>, AxiomErrors> {
    let decl = Declarations::of(schema);
    let mut out = Vec::new();
    let mut errors = Vec::new();
    let mut consumed: BTreeSet<Triple> = BTreeSet::new();

    // Enumerations first; their range, type, oneOf and list triples are
    // absorbed into a single axiom.
    for (property, range) in schema.pairs(&rdfs::range()) {
        let Term::Iri(datatype) = range else { continue };
        let heads: Vec<&Term> = schema.objects(datatype, &owl::one_of()).collect();
        let [head] = heads.as_slice() else { continue };
        if !decl.datatypes.contains(datatype) {
            continue;
        }
        match read_list(schema, datatype, head) {
            Ok((allowed, used)) => {
                consumed.extend(used);
                consumed.insert(Triple::new(property.clone(), rdfs::range(), datatype.clone()));
                consumed.insert(Triple::new(datatype.clone(), rdf::type_(), rdfs::datatype()));
                consumed.insert(Triple::new(datatype.clone(), owl::one_of(), (*head).clone()));
                out.push(SchemaAxiom::DatatypeEnumeration {
                    property: property.clone(),
                    datatype: datatype.clone(),
                    allowed,
                });
            }
            Err(e) => errors.push(e),
        }
    }

    for t in schema.iter() {
        if consumed.contains(&t) {
            continue;
        }
        let p = t.predicate.as_str();
        let undeclared = |term: &Iri| AxiomError::Undeclared {
            triple: t.clone(),
            term: term.clone(),
        };
        let object_iri = t.object.as_iri();
        if p == rdf::TYPE {
            let kind = object_iri.map(|o| o.as_str().to_owned()).unwrap_or_default();
            let s = t.subject.clone();
            let axiom = if kind == owl::class().as_str() {
                SchemaAxiom::ClassDecl(s)
            } else if kind == owl::object_property().as_str() {
                SchemaAxiom::ObjectProperty(s)
            } else if kind == owl::datatype_property().as_str() {
                SchemaAxiom::DataProperty(s)
            } else if kind == owl::annotation_property().as_str() {
                SchemaAxiom::AnnotationProperty(s)
            } else {
                errors.push(AxiomError::Unrecognized(t.clone()));
                continue;
            };
            out.push(axiom);
        } else if t.predicate == rdfs::sub_class_of() {
            let Some(sup) = object_iri else {
                errors.push(AxiomError::Unrecognized(t.clone()));
                continue;
            };
            for term in [&t.subject, sup] {
                if !decl.classes.contains(term) {
                    errors.push(undeclared(term));
                }
            }
            out.push(SchemaAxiom::SubClassOf {
                sub: t.subject.clone(),
                sup: sup.clone(),
            });
        } else if t.predicate == rdfs::domain() || t.predicate == rdfs::range() {
            let Some(target) = object_iri else {
                errors.push(AxiomError::Unrecognized(t.clone()));
                continue;
            };
            if !decl.is_property(&t.subject) {
                errors.push(undeclared(&t.subject));
            }
            let target_ok = decl.classes.contains(target)
                || (t.predicate == rdfs::range() && decl.data_properties.contains(&t.subject) && decl.is_datatype(target));
            if !target_ok {
                errors.push(undeclared(target));
            }
            out.push(if t.predicate == rdfs::domain() {
                SchemaAxiom::Domain {
                    property: t.subject.clone(),
                    class: target.clone(),
                }
            } else {
                SchemaAxiom::Range {
                    property: t.subject.clone(),
                    range: target.clone(),
                }
            });
        } else if decl.annotation_properties.contains(&t.predicate) {
            out.push(SchemaAxiom::Annotation {
                subject: t.subject.clone(),
                property: t.predicate.clone(),
                value: t.object.clone(),
            });
        } else {
            errors.push(AxiomError::Unrecognized(t.clone()));
        }
    }
    if errors.is_empty() {
        out.sort();
        Ok(out)
    } else {
        Err(AxiomErrors(errors))
    }
}

/// A structural problem in a schema graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SchemaDefect {
    /// `subject predicate missing` where `missing` is not declared.
    DanglingReference { subject: Iri, predicate: Iri, missing: Iri },
    MissingDomain(Iri),
    MissingRange(Iri),
    MultipleDomains(Iri),
    MultipleRanges(Iri),
    EnumerationOnNonDataProperty(Iri),
    /// Enumeration list that is empty, malformed or has duplicates.
    InvalidEnumeration(Iri),
    /// Members of one strongly connected component of the subclass graph.
    SubclassCycle(Vec<Iri>),
}

impl fmt::Display for SchemaDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaDefect::DanglingReference {
                subject,
                predicate,
                missing,
            } => write!(f, "dangling reference: {subject} {predicate} {missing} (not declared)"),
            SchemaDefect::MissingDomain(p) => write!(f, "property {p} has no domain"),
            SchemaDefect::MissingRange(p) => write!(f, "property {p} has no range"),
            SchemaDefect::MultipleDomains(p) => write!(f, "property {p} has more than one domain"),
            SchemaDefect::MultipleRanges(p) => write!(f, "property {p} has more than one range"),
            SchemaDefect::EnumerationOnNonDataProperty(p) => {
                write!(f, "enumeration range on non-data property {p}")
            }
            SchemaDefect::InvalidEnumeration(p) => {
                write!(f, "enumeration range of {p} is empty, malformed or has duplicates")
            }
            SchemaDefect::SubclassCycle(members) => {
                let names: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                write!(f, "subclass cycle among {}", names.join(", "))
            }
        }
    }
}

/// Strongly connected components of the `rdfs:subClassOf` graph that contain
/// a cycle, each sorted, in sorted order.
pub fn subclass_cycles(g: &Graph) -> Vec<Vec<Iri>> {
    let mut pg = petgraph::Graph::<Iri, ()>::new();
    let mut index = HashMap::new();
    let mut node = |pg: &mut petgraph::Graph<Iri, ()>, iri: &Iri| {
        *index.entry(iri.clone()).or_insert_with(|| pg.add_node(iri.clone()))
    };
    let mut self_loops = BTreeSet::new();
    for (sub, sup) in g.pairs(&rdfs::sub_class_of()) {
        let Term::Iri(sup) = sup else { continue };
        if sub == sup {
            self_loops.insert(sub.clone());
        }
        let a = node(&mut pg, sub);
        let b = node(&mut pg, sup);
        pg.add_edge(a, b, ());
    }
    let mut cycles: Vec<Vec<Iri>> = tarjan_scc(&pg)
        .into_iter()
        .filter_map(|scc| {
            let mut members: Vec<Iri> = scc.iter().map(|&i| pg[i].clone()).collect();
            members.sort();
            (members.len() > 1 || self_loops.contains(&members[0])).then_some(members)
        })
        .collect();
    cycles.sort();
    cycles
}

/// Structural defects; empty for a well-formed schema.
pub fn validate_schema(schema: &Graph) -> Vec<SchemaDefect> {
    let decl = Declarations::of(schema);
    let mut defects = Vec::new();

    for (sub, sup) in schema.pairs(&rdfs::sub_class_of()) {
        for term in [Some(sub), sup.as_iri()].into_iter().flatten() {
            if !decl.classes.contains(term) {
                defects.push(SchemaDefect::DanglingReference {
                    subject: sub.clone(),
                    predicate: rdfs::sub_class_of(),
                    missing: term.clone(),
                });
            }
        }
    }

    let mut domains: BTreeMap<&Iri, usize> = BTreeMap::new();
    let mut ranges: BTreeMap<&Iri, usize> = BTreeMap::new();
    for (p, c) in schema.pairs(&rdfs::domain()) {
        *domains.entry(p).or_default() += 1;
        if let Some(c) = c.as_iri() {
            if !decl.classes.contains(c) {
                defects.push(SchemaDefect::DanglingReference {
                    subject: p.clone(),
                    predicate: rdfs::domain(),
                    missing: c.clone(),
                });
            }
        }
    }
    for (p, r) in schema.pairs(&rdfs::range()) {
        *ranges.entry(p).or_default() += 1;
        let Some(r) = r.as_iri() else { continue };
        let is_enumeration = schema.objects(r, &owl::one_of()).next().is_some();
        if is_enumeration && !decl.data_properties.contains(p) {
            defects.push(SchemaDefect::EnumerationOnNonDataProperty(p.clone()));
        }
        if is_enumeration {
            let head = schema.objects(r, &owl::one_of()).next().expect("checked").clone();
            let valid = read_list(schema, r, &head).is_ok_and(|(values, _)| {
                let distinct: BTreeSet<&Literal> = values.iter().collect();
                !values.is_empty() && distinct.len() == values.len()
            });
            if !valid {
                defects.push(SchemaDefect::InvalidEnumeration(p.clone()));
            }
        }
        let ok = decl.classes.contains(r) || (decl.data_properties.contains(p) && decl.is_datatype(r));
        if !ok && !is_enumeration {
            defects.push(SchemaDefect::DanglingReference {
                subject: p.clone(),
                predicate: rdfs::range(),
                missing: r.clone(),
            });
        }
    }
    for p in decl.object_properties.iter().chain(&decl.data_properties) {
        match domains.get(p).copied().unwrap_or(0) {
            0 => defects.push(SchemaDefect::MissingDomain(p.clone())),
            1 => {}
            _ => defects.push(SchemaDefect::MultipleDomains(p.clone())),
        }
        match ranges.get(p).copied().unwrap_or(0) {
            0 => defects.push(SchemaDefect::MissingRange(p.clone())),
            1 => {}
            _ => defects.push(SchemaDefect::MultipleRanges(p.clone())),
        }
    }

    defects.extend(subclass_cycles(schema).into_iter().map(SchemaDefect::SubclassCycle));
    defects.sort();
    defects.dedup();
    defects
}

/// `(property, allowed values)` for every well-formed enumeration range.
pub fn enumerations(schema: &Graph) -> Vec<(Iri, Vec<Literal>)> {
    let mut out = Vec::new();
    for (property, range) in schema.pairs(&rdfs::range()) {
        let Term::Iri(datatype) = range else { continue };
        for head in schema.objects(datatype, &owl::one_of()) {
            if let Ok((values, _)) = read_list(schema, datatype, head) {
                out.push((property.clone(), values));
            }
        }
    }
    out.sort();
    out
}

/// Direct subclasses of `class` in `schema`, sorted.
pub fn direct_subclasses(schema: &Graph, class: &Iri) -> Vec<Iri> {
    schema.subjects(&rdfs::sub_class_of(), &class.clone().into()).cloned().collect()
}
