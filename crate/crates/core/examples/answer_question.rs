//! End-to-end answers for one question of each type.

use bioqa::answer::{answer_pipeline, QaSystem};

fn main() {
    let system = QaSystem::bundled().unwrap();
    let questions = std::env::args().skip(1).collect::<Vec<_>>();
    let questions = if questions.is_empty() {
        vec![
            "What is the cause of Phthiriasis Palpebrarum?".to_string(),
            "Which symptoms characterize the Muenke syndrome?".to_string(),
            "Is imatinib an antidepressant drug?".to_string(),
            "What is the role of galactocerebrosidase in Krabbe disease?".to_string(),
        ]
    } else {
        questions
    };
    for q in questions {
        let a = answer_pipeline(&q, &system).unwrap();
        println!("{}", serde_json::to_string_pretty(&a.to_record()).unwrap());
    }
}
