mod support;

use cbiont::reasoner::materialize_scheduled;
use cbiont::schema::terms;
use cbiont::vocab::{rdf, rdfs};
use cbiont::{
    build_schema, materialize, parse_turtle, validate, InferenceRule, ReasonerError, Triple,
    ViolationKind,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use support::{ex, iri, oracle_materialize, random_kb};

#[test]
fn fifty_random_kbs_match_the_oracle() {
    for seed in 0..50 {
        let mut rng = StdRng::seed_from_u64(seed);
        let kb = random_kb(&mut rng, 20, 30, 60);
        let got = materialize(&kb.abox, &kb.schema).unwrap();
        let want = oracle_materialize(&kb.abox, &kb.schema);
        assert_eq!(got, want, "seed {seed}");
    }
}

proptest! {
    #[test]
    fn rule_schedule_does_not_change_the_closure(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let kb = random_kb(&mut rng, 12, 15, 30);
        let reference = materialize(&kb.abox, &kb.schema).unwrap();
        let mut order_rng = StdRng::seed_from_u64(seed ^ 0x5eed);
        let shuffled = materialize_scheduled(&kb.abox, &kb.schema, |_| {
            let mut rules = InferenceRule::ALL;
            rules.shuffle(&mut order_rng);
            rules
        })
        .unwrap();
        prop_assert_eq!(&shuffled, &reference);
    }

    #[test]
    fn materialization_is_monotone_and_idempotent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let kb = random_kb(&mut rng, 10, 10, 20);
        let once = materialize(&kb.abox, &kb.schema).unwrap();
        prop_assert!(kb.abox.is_subset_of(&once));
        let twice = materialize(&once, &kb.schema).unwrap();
        prop_assert_eq!(twice, once);
    }
}

#[test]
fn cycle_through_the_abox_is_rejected() {
    let mut abox = cbiont::Graph::new();
    abox.insert(Triple::new(ex("A"), rdfs::sub_class_of(), ex("B")));
    abox.insert(Triple::new(ex("B"), rdfs::sub_class_of(), ex("A")));
    let err = materialize(&abox, &build_schema()).unwrap_err();
    let ReasonerError::SubclassCycle(members) = err;
    assert_eq!(members, vec![ex("A"), ex("B")]);
}

#[test]
fn session_typing_reaches_alignment_classes() {
    let s = iri("http://bi4people.org/data/cbiont/session/s");
    let mut abox = cbiont::Graph::new();
    abox.insert(Triple::new(s.clone(), rdf::type_(), terms::cbi_session()));
    let m = materialize(&abox, &build_schema()).unwrap();
    assert!(m.contains(&Triple::new(s.clone(), rdf::type_(), terms::temporal_spatial_session())));
    // Two typings of the session plus five entailed subclass links:
    // time:Instant and time:Interval via time:TemporalEntity, and the three
    // FOAF agent kinds via foaf:Agent.
    assert_eq!(m.subjects(&rdf::type_(), &terms::temporal_spatial_session().into()).count(), 1);
    assert_eq!(m.pairs(&rdfs::sub_class_of()).count(), 5);
    assert_eq!(m.len(), 7);
}

#[test]
fn bad_remark_fixture_has_exactly_four_violations() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/validation_bad.ttl");
    let (abox, _) = parse_turtle(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = validate(&abox, &build_schema());
    let got: Vec<(String, ViolationKind)> = v
        .iter()
        .map(|v| (v.subject.as_str().rsplit('/').next().unwrap().to_owned(), v.kind))
        .collect();
    assert_eq!(
        got,
        vec![
            ("bad1".to_owned(), ViolationKind::EnumerationViolation),
            ("bad2".to_owned(), ViolationKind::EnumerationViolation),
            ("bad3".to_owned(), ViolationKind::EnumerationViolation),
            ("bad4".to_owned(), ViolationKind::DatatypeViolation),
        ]
    );
    assert_eq!(v[3].property, Some(terms::has_description()));
}
