//! JSON collaborative-session export to CBIOnt ABox triples.
//!
//! Per session `S` the mapping emits:
//!
//! | triples | count |
//! |---|---|
//! | `S a CBI_Session` | 1 |
//! | `S associated_with phase/{code}`, `S belongs_to aspect/{code}`, `S has_type form/{code}` | 3 |
//! | per collaborator `C`: `S owned_by C`, `C a foaf:Person/Organization/Group` | 2 each |
//! | per affiliation: `C affiliated_with O` | 1 each |
//! | `S has_time T`, `T a time:Instant`, `T time:inXSDDateTime "..."^^xsd:dateTime` | 3 |
//! | `S has_location P`, `P a geo:SpatialThing` | 2 |
//! | `P geo:lat`, `P geo:long` (`xsd:decimal`) when coordinates are given | 2 |
//! | per remark `R`: `S contains_remark R`, `R a Remark`, `R hasRemark "Question"/"Answer"/"Comment"`, `R hasDescription "..."`, `R authored_by C`, `R posted_at "..."^^xsd:dateTime` | 6 each |
//!
//! The phase, aspect and form individuals are shared across sessions; their
//! typing triples come from [`code_individuals`].

use std::fmt;
use std::path::Path;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde::Deserialize;

use crate::graph::Graph;
use crate::schema::{external, terms};
use crate::term::{Iri, Literal, Triple};
use crate::vocab::{rdf, xsd, CBIDATA, CBIONT};

/// Everything except unreserved characters and `:` is percent-encoded.
const SEGMENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~').remove(b':');

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    PreDecision,
    Decision,
    PostDecision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResearchAspect {
    QueryFormulation,
    SourceDiscovery,
    DataAcquisition,
    DataIntegration,
    DataPresentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    GeneralDiscussion,
    Annotation,
    ReportCentricDiscussion,
    VisualizingBehavior,
    TrendAnalysis,
    TaskCoordination,
    InformationSharing,
}

/// A closed code set whose members map to one individual per schema leaf.
pub trait Code: Copy + 'static {
    const ALL: &'static [Self];
    /// Path segment under the data namespace, e.g. `phase`.
    const SEGMENT: &'static str;
    fn code(self) -> &'static str;
    fn class_local(self) -> &'static str;

    fn class(self) -> Iri {
        CBIONT.term(self.class_local())
    }
}

macro_rules! code_set {
    ($ty:ident, $segment:literal, $($variant:ident => $code:literal, $class:literal;)*) => {
        impl Code for $ty {
            const ALL: &'static [Self] = &[$($ty::$variant),*];
            const SEGMENT: &'static str = $segment;
            fn code(self) -> &'static str {
                match self { $($ty::$variant => $code),* }
            }
            fn class_local(self) -> &'static str {
                match self { $($ty::$variant => $class),* }
            }
        }
    };
}

code_set!(Phase, "phase",
    PreDecision => "pre_decision", "Pre_Decision_Phase";
    Decision => "decision", "Decision_Phase";
    PostDecision => "post_decision", "Post_Decision_Phase";
);

code_set!(ResearchAspect, "aspect",
    QueryFormulation => "query_formulation", "Collaborative_Query_Formulation";
    SourceDiscovery => "source_discovery", "Collaborative_Source_Discovery";
    DataAcquisition => "data_acquisition", "Collaborative_Data_Acquisition";
    DataIntegration => "data_integration", "Collaborative_Data_Integration";
    DataPresentation => "data_presentation", "Collaborative_Data_Presentation";
);

code_set!(Form, "form",
    GeneralDiscussion => "general_discussion", "General_Discussion";
    Annotation => "annotation", "Annotation";
    ReportCentricDiscussion => "report_centric_discussion", "Report_Centric_Discussion";
    VisualizingBehavior => "visualizing_behavior", "Visualizing_Behavior";
    TrendAnalysis => "trend_analysis", "Trend_Analysis";
    TaskCoordination => "task_coordination", "Task_Coordination";
    InformationSharing => "information_sharing", "Information_Sharing";
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocationKind {
    Physical,
    Virtual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollaboratorKind {
    Person,
    Organization,
    Group,
}

impl CollaboratorKind {
    fn class(self) -> Iri {
        match self {
            CollaboratorKind::Person => external::person(),
            CollaboratorKind::Organization => external::organization(),
            CollaboratorKind::Group => external::group(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemarkKind {
    Question,
    Answer,
    Comment,
}

impl RemarkKind {
    /// Stored form, matching the `hasRemark` enumeration.
    pub fn label(self) -> &'static str {
        match self {
            RemarkKind::Question => "Question",
            RemarkKind::Answer => "Answer",
            RemarkKind::Comment => "Comment",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Location {
    pub name: String,
    pub kind: LocationKind,
    #[serde(default)]
    pub lat: Option<f64>,
    #[serde(default)]
    pub long: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Collaborator {
    pub id: String,
    pub name: String,
    pub kind: CollaboratorKind,
    #[serde(default)]
    pub affiliation_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Remark {
    pub kind: RemarkKind,
    pub text: String,
    pub author_id: String,
    pub at: String,
}

/// One session of the platform's JSON export.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionRecord {
    pub id: String,
    pub title: String,
    pub started_at: String,
    pub location: Location,
    pub phase: Phase,
    pub research_aspect: ResearchAspect,
    pub form: Form,
    pub collaborators: Vec<Collaborator>,
    pub remarks: Vec<Remark>,
}

/// A problem in one session record, located by JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}: {message}", if path.is_empty() { "/" } else { path.as_str() })]
pub struct IngestError {
    pub path: String,
    pub message: String,
}

impl IngestError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        IngestError {
            path: path.into(),
            message: message.into(),
        }
    }
}

fn pointer_escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn check_timestamp(value: &str, path: String) -> Result<(), IngestError> {
    chrono::DateTime::parse_from_rfc3339(value)
        .map(|_| ())
        .map_err(|e| IngestError::at(path, format!("`{value}` is not an ISO-8601 timestamp with offset: {e}")))
}

impl SessionRecord {
    /// Checks the constraints serde cannot express.
    pub fn check(&self) -> Result<(), IngestError> {
        if self.id.is_empty() {
            return Err(IngestError::at("/id", "session id must not be empty"));
        }
        check_timestamp(&self.started_at, "/started_at".into())?;
        if self.location.name.is_empty() {
            return Err(IngestError::at("/location/name", "location name must not be empty"));
        }
        match (self.location.lat, self.location.long) {
            (Some(lat), Some(long)) => {
                if !(-90.0..=90.0).contains(&lat) {
                    return Err(IngestError::at("/location/lat", format!("latitude {lat} out of range")));
                }
                if !(-180.0..=180.0).contains(&long) {
                    return Err(IngestError::at("/location/long", format!("longitude {long} out of range")));
                }
            }
            (Some(_), None) => {
                return Err(IngestError::at("/location/long", "latitude given without longitude"))
            }
            (None, Some(_)) => {
                return Err(IngestError::at("/location/lat", "longitude given without latitude"))
            }
            (None, None) => {}
        }
        for (i, c) in self.collaborators.iter().enumerate() {
            if c.id.is_empty() {
                return Err(IngestError::at(format!("/collaborators/{i}/id"), "collaborator id must not be empty"));
            }
            if self.collaborators[..i].iter().any(|other| other.id == c.id) {
                return Err(IngestError::at(
                    format!("/collaborators/{i}/id"),
                    format!("duplicate collaborator id `{}`", c.id),
                ));
            }
        }
        for (i, c) in self.collaborators.iter().enumerate() {
            let Some(aff) = &c.affiliation_id else { continue };
            let path = format!("/collaborators/{i}/affiliation_id");
            if c.kind != CollaboratorKind::Person {
                return Err(IngestError::at(path, "only person collaborators may have an affiliation"));
            }
            match self.collaborator(aff) {
                None => return Err(IngestError::at(path, format!("no collaborator with id `{aff}`"))),
                Some(org) if org.kind != CollaboratorKind::Organization => {
                    return Err(IngestError::at(path, format!("collaborator `{aff}` is not an organization")))
                }
                Some(_) => {}
            }
        }
        for (i, r) in self.remarks.iter().enumerate() {
            if self.collaborator(&r.author_id).is_none() {
                return Err(IngestError::at(
                    format!("/remarks/{i}/author_id"),
                    format!("no collaborator with id `{}`", r.author_id),
                ));
            }
            check_timestamp(&r.at, format!("/remarks/{i}/at"))?;
        }
        Ok(())
    }

    fn collaborator(&self, id: &str) -> Option<&Collaborator> {
        self.collaborators.iter().find(|c| c.id == id)
    }
}

/// Strict parse of one session object.
pub fn parse_session(json_text: &str) -> Result<SessionRecord, IngestError> {
    let value: serde_json::Value = serde_json::from_str(json_text)
        .map_err(|e| IngestError::at("", format!("invalid JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    session_from_value(value)
}

/// Strict conversion of an already-parsed JSON value.
pub fn session_from_value(value: serde_json::Value) -> Result<SessionRecord, IngestError> {
    let record: SessionRecord = serde_path_to_error::deserialize(value).map_err(|e| {
        let mut path = String::new();
        for segment in e.path().iter() {
            use serde_path_to_error::Segment;
            match segment {
                Segment::Seq { index } => path.push_str(&format!("/{index}")),
                Segment::Map { key } => path.push_str(&format!("/{}", pointer_escape(key))),
                Segment::Enum { variant } => path.push_str(&format!("/{}", pointer_escape(variant))),
                Segment::Unknown => path.push_str("/?"),
            }
        }
        let message = e.inner().to_string();
        // Point at the missing member rather than its parent object.
        if let Some(field) = message
            .strip_prefix("missing field `")
            .and_then(|rest| rest.split('`').next())
        {
            path.push_str(&format!("/{}", pointer_escape(field)));
        }
        IngestError::at(path, message)
    })?;
    record.check()?;
    Ok(record)
}

/// IRI minting rules under a base namespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MintingScheme {
    base: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("minting base {0} must end in `/` or `#`")]
pub struct MintingBaseError(pub Iri);

impl Default for MintingScheme {
    fn default() -> Self {
        MintingScheme { base: CBIDATA.iri() }
    }
}

impl MintingScheme {
    pub fn new(base: Iri) -> Result<Self, MintingBaseError> {
        if base.as_str().ends_with('/') || base.as_str().ends_with('#') {
            Ok(MintingScheme { base })
        } else {
            Err(MintingBaseError(base))
        }
    }

    pub fn base(&self) -> &Iri {
        &self.base
    }

    fn mint(&self, path: &str) -> Iri {
        Iri::new(format!("{}{path}", self.base.as_str())).expect("percent-encoded segments form a valid IRI")
    }

    fn enc(segment: &str) -> String {
        utf8_percent_encode(segment, SEGMENT).to_string()
    }

    pub fn session(&self, id: &str) -> Iri {
        self.mint(&format!("session/{}", Self::enc(id)))
    }

    pub fn agent(&self, id: &str) -> Iri {
        self.mint(&format!("agent/{}", Self::enc(id)))
    }

    /// `ordinal` is 1-based.
    pub fn remark(&self, session_id: &str, ordinal: usize) -> Iri {
        self.mint(&format!("session/{}/remark/{ordinal}", Self::enc(session_id)))
    }

    pub fn place(&self, name: &str) -> Iri {
        self.mint(&format!("place/{}", Self::enc(name)))
    }

    pub fn instant(&self, timestamp: &str) -> Iri {
        self.mint(&format!("time/{}", Self::enc(timestamp)))
    }

    pub fn code<C: Code>(&self, code: C) -> Iri {
        self.mint(&format!("{}/{}", C::SEGMENT, code.code()))
    }
}

/// Typing triples for the 15 shared phase, aspect and form individuals.
pub fn code_individuals(scheme: &MintingScheme) -> Graph {
    fn add<C: Code>(g: &mut Graph, scheme: &MintingScheme) {
        for &code in C::ALL {
            g.insert(Triple::new(scheme.code(code), rdf::type_(), code.class()));
        }
    }
    let mut g = Graph::new();
    add::<Phase>(&mut g, scheme);
    add::<ResearchAspect>(&mut g, scheme);
    add::<Form>(&mut g, scheme);
    g
}

fn decimal(value: f64) -> Literal {
    // f64 Display never uses exponent notation.
    Literal::typed(format!("{value}"), xsd::decimal()).expect("decimal literal")
}

fn date_time(value: &str) -> Literal {
    Literal::typed(value, xsd::date_time()).expect("dateTime literal")
}

/// ABox triples for one validated session.
pub fn session_to_triples(rec: &SessionRecord, scheme: &MintingScheme) -> Graph {
    let ty = rdf::type_();
    let s = scheme.session(&rec.id);
    let mut g = Graph::new();
    let mut add = |subject: &Iri, predicate: Iri, object: crate::term::Term| {
        g.insert(Triple::new(subject.clone(), predicate, object));
    };

    add(&s, ty.clone(), terms::cbi_session().into());
    add(&s, terms::associated_with(), scheme.code(rec.phase).into());
    add(&s, terms::belongs_to(), scheme.code(rec.research_aspect).into());
    add(&s, terms::has_type(), scheme.code(rec.form).into());

    for c in &rec.collaborators {
        let agent = scheme.agent(&c.id);
        add(&s, terms::owned_by(), agent.clone().into());
        add(&agent, ty.clone(), c.kind.class().into());
        if let Some(org) = &c.affiliation_id {
            add(&agent, terms::affiliated_with(), scheme.agent(org).into());
        }
    }

    let instant = scheme.instant(&rec.started_at);
    add(&s, terms::has_time(), instant.clone().into());
    add(&instant, ty.clone(), external::instant().into());
    add(&instant, external::in_xsd_date_time(), date_time(&rec.started_at).into());

    let place = scheme.place(&rec.location.name);
    add(&s, terms::has_location(), place.clone().into());
    add(&place, ty.clone(), external::spatial_thing().into());
    if let (Some(lat), Some(long)) = (rec.location.lat, rec.location.long) {
        add(&place, external::lat(), decimal(lat).into());
        add(&place, external::long(), decimal(long).into());
    }

    for (i, r) in rec.remarks.iter().enumerate() {
        let remark = scheme.remark(&rec.id, i + 1);
        add(&s, terms::contains_remark(), remark.clone().into());
        add(&remark, ty.clone(), terms::remark().into());
        add(&remark, terms::has_remark(), Literal::string(r.kind.label()).into());
        add(&remark, terms::has_description(), Literal::string(&r.text).into());
        add(&remark, terms::authored_by(), scheme.agent(&r.author_id).into());
        add(&remark, terms::posted_at(), date_time(&r.at).into());
    }
    g
}

/// Triple count for a record, from the mapping table alone.
pub fn expected_triple_count(rec: &SessionRecord) -> usize {
    let affiliations = rec.collaborators.iter().filter(|c| c.affiliation_id.is_some()).count();
    let coordinates = if rec.location.lat.is_some() { 2 } else { 0 };
    1 + 3 + 2 * rec.collaborators.len() + affiliations + 3 + 2 + coordinates + 6 * rec.remarks.len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionOutcome {
    /// Position in the input array; 0 for a single-object file.
    pub index: usize,
    pub id: Option<String>,
    /// Triples emitted for the session, or why it was rejected.
    pub result: Result<usize, IngestError>,
    /// Triples that were new to the target graph.
    pub added: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub sessions: Vec<SessionOutcome>,
}

impl IngestReport {
    pub fn ok(&self) -> usize {
        self.sessions.iter().filter(|s| s.result.is_ok()).count()
    }

    pub fn failed(&self) -> usize {
        self.sessions.len() - self.ok()
    }

    pub fn added(&self) -> usize {
        self.sessions.iter().map(|s| s.added).sum()
    }
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sessions {
            let id = s.id.as_deref().unwrap_or("?");
            match &s.result {
                Ok(n) => writeln!(f, "session[{}] {id}: ok, {n} triples ({} new)", s.index, s.added)?,
                Err(e) => writeln!(f, "session[{}] {id}: failed at {e}", s.index)?,
            }
        }
        write!(f, "ok: {}, failed: {}", self.ok(), self.failed())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IngestFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: invalid JSON: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: expected a session object or an array of session objects")]
    Shape { path: String },
}

/// Ingests a JSON document (one session object or an array of them) into
/// `kb`. Each session is added completely or not at all.
pub fn ingest_str(
    text: &str,
    source_name: &str,
    kb: &mut Graph,
    scheme: &MintingScheme,
) -> Result<IngestReport, IngestFileError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| IngestFileError::Json {
        path: source_name.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        obj @ serde_json::Value::Object(_) => vec![obj],
        _ => {
            return Err(IngestFileError::Shape {
                path: source_name.to_owned(),
            })
        }
    };
    let mut report = IngestReport::default();
    for (index, item) in items.into_iter().enumerate() {
        let id = item.get("id").and_then(|v| v.as_str()).map(str::to_owned);
        let outcome = match session_from_value(item) {
            Ok(rec) => {
                let triples = session_to_triples(&rec, scheme);
                let added = kb.extend_from(&triples);
                SessionOutcome {
                    index,
                    id,
                    result: Ok(triples.len()),
                    added,
                }
            }
            Err(e) => SessionOutcome {
                index,
                id,
                result: Err(e),
                added: 0,
            },
        };
        report.sessions.push(outcome);
    }
    Ok(report)
}

pub fn ingest_file(
    path: impl AsRef<Path>,
    kb: &mut Graph,
    scheme: &MintingScheme,
) -> Result<IngestReport, IngestFileError> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| IngestFileError::Io {
        path: name.clone(),
        source,
    })?;
    ingest_str(&text, &name, kb, scheme)
}
