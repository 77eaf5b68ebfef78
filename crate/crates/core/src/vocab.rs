//! Namespaces and well-known terms.

use crate::term::Iri;
use crate::turtle::PrefixMap;

/// A namespace base with its conventional prefix label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Namespace {
    pub prefix: &'static str,
    pub base: &'static str,
}

impl Namespace {
    pub const fn new(prefix: &'static str, base: &'static str) -> Self {
        Namespace { prefix, base }
    }

    /// The IRI `base + local`.
    ///
    /// Panics if the concatenation is not a valid IRI; only use with
    /// constant local names.
    pub fn term(&self, local: &str) -> Iri {
        Iri::new(format!("{}{}", self.base, local))
            .unwrap_or_else(|e| panic!("invalid vocabulary term {local:?}: {e}"))
    }

    pub fn iri(&self) -> Iri {
        Iri::new(self.base).expect("namespace base is a valid IRI")
    }
}

pub const CBIONT: Namespace = Namespace::new("cbiont", "http://bi4people.org/ontology/cbiont#");
pub const CBIDATA: Namespace = Namespace::new("cbidata", "http://bi4people.org/data/cbiont/");
pub const RDF: Namespace = Namespace::new("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
pub const RDFS: Namespace = Namespace::new("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
pub const OWL: Namespace = Namespace::new("owl", "http://www.w3.org/2002/07/owl#");
pub const XSD: Namespace = Namespace::new("xsd", "http://www.w3.org/2001/XMLSchema#");
pub const TIME: Namespace = Namespace::new("time", "http://www.w3.org/2006/time#");
pub const GEO: Namespace = Namespace::new("geo", "http://www.w3.org/2003/01/geo/wgs84_pos#");
pub const FOAF: Namespace = Namespace::new("foaf", "http://xmlns.com/foaf/0.1/");

pub const ALL: [Namespace; 9] = [CBIONT, CBIDATA, RDF, RDFS, OWL, XSD, TIME, GEO, FOAF];

/// Prefix map used for the schema file, KB files and query text.
pub fn standard_prefixes() -> PrefixMap {
    prefixes_with_data_base(CBIDATA.base)
}

/// Standard prefixes with the `cbidata` namespace replaced by `data_base`.
pub fn prefixes_with_data_base(data_base: &str) -> PrefixMap {
    let mut map = PrefixMap::new();
    for ns in ALL {
        let base = if ns == CBIDATA { data_base } else { ns.base };
        map.insert(ns.prefix, Iri::new(base).expect("namespace base is a valid IRI"));
    }
    map
}

/// True for IRIs in the RDF, RDFS, OWL or XSD namespaces.
pub fn is_builtin(iri: &Iri) -> bool {
    [RDF, RDFS, OWL, XSD]
        .iter()
        .any(|ns| iri.as_str().starts_with(ns.base))
}

pub mod rdf {
    use super::RDF;
    use crate::term::Iri;

    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

    pub fn type_() -> Iri {
        RDF.term("type")
    }
    pub fn lang_string() -> Iri {
        RDF.term("langString")
    }
    pub fn first() -> Iri {
        RDF.term("first")
    }
    pub fn rest() -> Iri {
        RDF.term("rest")
    }
    pub fn nil() -> Iri {
        RDF.term("nil")
    }
}

pub mod rdfs {
    use super::RDFS;
    use crate::term::Iri;

    pub fn sub_class_of() -> Iri {
        RDFS.term("subClassOf")
    }
    pub fn domain() -> Iri {
        RDFS.term("domain")
    }
    pub fn range() -> Iri {
        RDFS.term("range")
    }
    pub fn datatype() -> Iri {
        RDFS.term("Datatype")
    }
    pub fn literal() -> Iri {
        RDFS.term("Literal")
    }
}

pub mod owl {
    use super::OWL;
    use crate::term::Iri;

    pub fn class() -> Iri {
        OWL.term("Class")
    }
    pub fn object_property() -> Iri {
        OWL.term("ObjectProperty")
    }
    pub fn datatype_property() -> Iri {
        OWL.term("DatatypeProperty")
    }
    pub fn annotation_property() -> Iri {
        OWL.term("AnnotationProperty")
    }
    pub fn one_of() -> Iri {
        OWL.term("oneOf")
    }
}

pub mod xsd {
    use super::XSD;
    use crate::term::Iri;

    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";

    pub fn string() -> Iri {
        XSD.term("string")
    }
    pub fn integer() -> Iri {
        XSD.term("integer")
    }
    pub fn boolean() -> Iri {
        XSD.term("boolean")
    }
    pub fn decimal() -> Iri {
        XSD.term("decimal")
    }
    pub fn date_time() -> Iri {
        XSD.term("dateTime")
    }
}
