//! Synthetic workloads for the benchmarks in `benches/`.

use cbiont::ingest::{
    Collaborator, CollaboratorKind, Form, Location, LocationKind, Phase, Remark, RemarkKind,
    ResearchAspect,
};
use cbiont::{code_individuals, session_to_triples, Graph, MintingScheme, SessionRecord};

const PHASES: [Phase; 3] = [Phase::PreDecision, Phase::Decision, Phase::PostDecision];
const ASPECTS: [ResearchAspect; 5] = [
    ResearchAspect::QueryFormulation,
    ResearchAspect::SourceDiscovery,
    ResearchAspect::DataAcquisition,
    ResearchAspect::DataIntegration,
    ResearchAspect::DataPresentation,
];
const FORMS: [Form; 7] = [
    Form::GeneralDiscussion,
    Form::Annotation,
    Form::ReportCentricDiscussion,
    Form::VisualizingBehavior,
    Form::TrendAnalysis,
    Form::TaskCoordination,
    Form::InformationSharing,
];
const KINDS: [RemarkKind; 3] = [RemarkKind::Question, RemarkKind::Answer, RemarkKind::Comment];

/// Session `i` with four collaborators and `remarks` remarks.
pub fn session(i: usize, remarks: usize) -> SessionRecord {
    let collaborators = vec![
        Collaborator {
            id: "org".into(),
            name: "Org".into(),
            kind: CollaboratorKind::Organization,
            affiliation_id: None,
        },
        Collaborator {
            id: format!("p{}", i % 17),
            name: "P".into(),
            kind: CollaboratorKind::Person,
            affiliation_id: Some("org".into()),
        },
        Collaborator {
            id: format!("p{}", (i + 1) % 17),
            name: "Q".into(),
            kind: CollaboratorKind::Person,
            affiliation_id: None,
        },
        Collaborator {
            id: "team".into(),
            name: "Team".into(),
            kind: CollaboratorKind::Group,
            affiliation_id: None,
        },
    ];
    let remarks = (0..remarks)
        .map(|r| Remark {
            kind: KINDS[r % 3],
            text: format!("Remark {r} of session {i}"),
            author_id: collaborators[1 + r % 2].id.clone(),
            at: format!("2024-01-{:02}T10:{:02}:00Z", 1 + i % 28, r % 60),
        })
        .collect();
    SessionRecord {
        id: format!("bench-{i}"),
        title: format!("Session {i}"),
        started_at: format!("2024-01-{:02}T10:00:00Z", 1 + i % 28),
        location: Location {
            name: format!("Room {}", i % 9),
            kind: LocationKind::Physical,
            lat: Some(45.0 + (i % 10) as f64 / 10.0),
            long: Some(4.5),
        },
        phase: PHASES[i % 3],
        research_aspect: ASPECTS[i % 5],
        form: FORMS[i % 7],
        collaborators,
        remarks,
    }
}

/// ABox for `sessions` sessions of `remarks` remarks each, plus the shared
/// code individuals.
pub fn abox(sessions: usize, remarks: usize) -> Graph {
    let scheme = MintingScheme::default();
    let mut g = code_individuals(&scheme);
    for i in 0..sessions {
        g.extend_from(&session_to_triples(&session(i, remarks), &scheme));
    }
    g
}
