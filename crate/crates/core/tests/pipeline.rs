use bioqa::answer::{answer_pipeline, ExactAnswer, QaSystem};
use bioqa::ingest::{bundled_questions, ResourceBundle};
use bioqa::qclass::{
    classify_type, train_type_classifier, FeatureExtractor, FeatureSpace, FeatureVector,
    QuestionType, TypeTrainConfig,
};
use bioqa::retrieval::{formulate_query, FileStubSearcher};

const PHTH: &str = "What is the cause of Phthiriasis Palpebrarum?";

#[test]
fn phthiriasis_stage_by_stage() {
    let system = QaSystem::bundled().unwrap();
    assert_eq!(system.classify(PHTH), QuestionType::Factoid);

    let query = formulate_query(PHTH, &system.analyzer());
    assert_eq!(query.boolean(), "phthiriasis palpebrarum");

    let docs = system.retrieve_documents(PHTH);
    let ids: Vec<&str> = docs.docs.iter().map(|d| d.doc_id.as_str()).collect();
    for id in ["S0000001", "S0000002", "S0000003"] {
        assert!(ids.contains(&id), "{id} not retrieved: {ids:?}");
    }

    let passages = system.retrieve_passages(PHTH, &docs);
    assert!(passages
        .iter()
        .any(|p| p.passage.text.contains("Pthirus pubis")));
    assert!(passages.windows(2).all(|w| w[0].score >= w[1].score));

    let answer = answer_pipeline(PHTH, &system).unwrap();
    let Some(ExactAnswer::Factoid(entities)) = &answer.exact else {
        panic!("{:?}", answer.exact)
    };
    assert_eq!(entities[0].name, "Pthirus pubis");
    assert!(entities.len() <= 5);
    assert!(!answer.ideal.text.is_empty());
    assert!(answer.flags.is_empty(), "{:?}", answer.flags);
}

#[test]
fn answers_are_deterministic() {
    let system = QaSystem::bundled().unwrap();
    let a = answer_pipeline(PHTH, &system).unwrap().to_json_line();
    let b = answer_pipeline(PHTH, &system).unwrap().to_json_line();
    assert_eq!(a, b);
}

#[test]
fn list_answers_respect_the_cap() {
    let mut system = QaSystem::bundled().unwrap();
    system.config.list_cap = 2;
    let a = answer_pipeline("Which symptoms characterize the Muenke syndrome?", &system).unwrap();
    match a.exact {
        Some(ExactAnswer::List(e)) => assert!(!e.is_empty() && e.len() <= 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unanswerable_question_is_flagged_not_failed() {
    let system = QaSystem::bundled().unwrap();
    let a = answer_pipeline("Is zqxv a wrbl?", &system).unwrap();
    assert!(a.flags.iter().any(|f| f == "no_documents"), "{:?}", a.flags);
    assert!(answer_pipeline("", &system).is_err());
}

#[test]
fn remote_stub_replaces_the_local_search() {
    let dir = bioqa::data_dir().join("remote_stub");
    let system = QaSystem::bundled()
        .unwrap()
        .with_remote(Box::new(FileStubSearcher::new(&dir)));
    let r = system.retrieve_documents("Is imatinib an antidepressant drug?");
    let ids: Vec<&str> = r.docs.iter().map(|d| d.doc_id.as_str()).collect();
    // the stub also lists an id that is not in the corpus
    assert_eq!(ids, ["S0000004", "15887238"]);
    assert!(r.flags.is_empty());

    let missing = QaSystem::bundled()
        .unwrap()
        .with_remote(Box::new(FileStubSearcher::new("/nonexistent")));
    let r = missing.retrieve_documents("Is imatinib an antidepressant drug?");
    assert!(r.flags.iter().any(|f| f == "remote_fallback"));
    assert_eq!(r.docs[0].doc_id, "S0000004");
}

#[test]
fn appendix_yesno_questions_match_the_yesno_pattern() {
    let fx = FeatureExtractor::bundled();
    let res = ResourceBundle::bundled();
    let ds = bundled_questions();
    let yesno: Vec<_> = ds
        .questions
        .iter()
        .filter(|q| q.qtype == QuestionType::Yesno)
        .collect();
    assert_eq!(yesno.len(), 9);
    for q in yesno {
        let tagged = fx.tag(&q.body);
        assert!(
            res.patterns
                .of_category(QuestionType::Yesno)
                .any(|p| p.find(&tagged).is_some()),
            "{}",
            q.body
        );
    }
}

#[test]
fn definition_question_pattern_features() {
    let fx = FeatureExtractor::bundled();
    assert_eq!(
        fx.extract(
            "What is the definition of autophagy?",
            FeatureSpace::Patterns
        ),
        FeatureVector::from_counts([("what", 1), ("VBZ", 1), ("definition", 1)])
    );
}

#[test]
fn type_training_is_bit_reproducible() {
    let fx = FeatureExtractor::bundled();
    let examples = bundled_questions().labeled();
    for space in FeatureSpace::ALL {
        let cfg = TypeTrainConfig {
            space,
            ..TypeTrainConfig::default()
        };
        let a = train_type_classifier(&examples, &fx, &cfg).unwrap();
        let b = train_type_classifier(&examples, &fx, &cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{space}");
    }
    let other = TypeTrainConfig {
        seed: 7,
        ..TypeTrainConfig::default()
    };
    let m = train_type_classifier(&examples, &fx, &other).unwrap();
    assert_eq!(m.meta.seed, 7);
    let correct = examples
        .iter()
        .filter(|q| classify_type(&m, &fx, &q.text) == q.qtype)
        .count();
    assert!(correct >= 27, "{correct}/30");
}
