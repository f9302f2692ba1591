//! Multi-label topic classification of clinical questions with different
//! feature families.

use bioqa::ingest::{load_dependencies, load_topic_questions, ResourceBundle};
use bioqa::qclass::{
    classify_topics, extract_topic_features, train_topic_models, TopicFeatureConfig,
};

fn main() {
    let res = ResourceBundle::bundled();
    let data = bioqa::data_dir();
    let mut ds = load_topic_questions(data.join("topics.json")).unwrap();
    ds.attach_dependencies(&load_dependencies(data.join("topics_deps.tsv")).unwrap());

    for features in ["BOW", "BOW+BOB", "BOW+BOS+BOCST", "BOW+BOB+BOS+BOCST+BOSDR"] {
        let cfg: TopicFeatureConfig = features.parse().unwrap();
        let models =
            train_topic_models(&ds.questions, &cfg, 42, 1.01, &res.stopwords, &res.lexicon)
                .unwrap();
        // exact-set match on the training questions
        let exact = ds
            .questions
            .iter()
            .filter(|q| {
                let fv = extract_topic_features(
                    &q.text,
                    &cfg,
                    q.dep_pairs.as_deref(),
                    &res.stopwords,
                    &res.lexicon,
                );
                let got = classify_topics(&models, &fv);
                got.len() == q.topics.len() && q.topics.iter().all(|t| got.contains(t))
            })
            .count();
        println!("{features:<26} {exact}/{} exact", ds.questions.len());
    }

    let cfg = TopicFeatureConfig::default();
    let models =
        train_topic_models(&ds.questions, &cfg, 42, 1.01, &res.stopwords, &res.lexicon).unwrap();
    let q = "What is the best treatment for a child with recurrent kidney stones?";
    let fv = extract_topic_features(q, &cfg, None, &res.stopwords, &res.lexicon);
    println!("\n{q}\n    {:?}", classify_topics(&models, &fv));
}
