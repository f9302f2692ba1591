//! Train the type classifier in each feature space and classify new questions.

use bioqa::ingest::bundled_questions;
use bioqa::qclass::{
    classify_type, train_type_classifier, FeatureExtractor, FeatureSpace, TypeTrainConfig,
};

fn main() {
    let fx = FeatureExtractor::bundled();
    let examples = bundled_questions().labeled();
    let questions = [
        "Is Tuberous Sclerosis a genetic disease?",
        "Which symptoms characterize the Muenke syndrome?",
        "What is the cause of Phthiriasis Palpebrarum?",
        "List the drugs used to treat Krabbe disease.",
    ];

    for space in FeatureSpace::ALL {
        let cfg = TypeTrainConfig {
            space,
            ..TypeTrainConfig::default()
        };
        let model = train_type_classifier(&examples, &fx, &cfg).unwrap();
        let fit = examples
            .iter()
            .filter(|q| model.predict(&fx.extract(&q.text, space)) == q.qtype)
            .count();
        let guesses: Vec<String> = questions
            .iter()
            .map(|q| classify_type(&model, &fx, q).to_string())
            .collect();
        println!(
            "{:<12} fit {fit}/{}  {}",
            space.as_str(),
            examples.len(),
            guesses.join(" ")
        );
    }

    println!();
    for q in questions {
        let fv = fx.extract(q, FeatureSpace::Patterns);
        println!("{q}\n    {:?}", fv.iter().collect::<Vec<_>>());
    }
}
