//! Knowledge-base engine for the Collaborative Business Intelligence
//! ontology (CBIOnt).
//!
//! The crate builds the ontology's TBox, ingests collaborative-session
//! exports as RDF, materializes RDFS-style inferences, validates the remark
//! enumeration and datatype constraints, and answers competency questions
//! with a basic-graph-pattern query engine.

pub mod graph;
pub mod ingest;
pub mod query;
pub mod reasoner;
pub mod schema;
pub mod term;
pub mod turtle;
pub mod vocab;

pub use graph::{graph_equal, Graph, IndexKind};
pub use term::{Iri, Literal, Term, TermError, Triple};
pub use turtle::{
    parse_ntriples, parse_turtle, serialize_ntriples, serialize_turtle, ParseError,
    ParseErrorKind, PrefixMap,
};
pub use schema::{axioms, build_schema, validate_schema, SchemaAxiom, SchemaDefect};
pub use reasoner::{
    instances_of, is_subclass_of, materialize, validate, validate_with, InferenceRule,
    ReasonerError, ValidationOptions, Violation, ViolationKind,
};
pub use ingest::{
    code_individuals, ingest_file, ingest_str, parse_session, session_to_triples, IngestError,
    IngestFileError, IngestReport, MintingScheme, SessionRecord,
};
pub use query::{
    competency_query, evaluate, parse_query, results_to_json, results_to_tsv, BindingSet,
    CompetencyQuestion, Filter, PatternTerm, SelectQuery, TriplePattern, Variable,
};
