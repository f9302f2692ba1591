//! Metric building blocks and a full run evaluation against the mini gold set.

use bioqa::answer::QaSystem;
use bioqa::evalkit::{average_precision, evaluate_run, mrr, rouge_n, rouge_su, EvalConfig};
use bioqa::ingest::{load_questions, QuestionDataset};

fn main() {
    println!(
        "AP   {:.4}",
        average_precision(&["d1", "x", "d2"], &["d1", "d2"]).unwrap()
    );
    println!("MRR  {:.4}", mrr(&[Some(2), Some(4)]));
    println!("R-2  {:.4}", rouge_n("a b c d", &["a b c e"], 2));
    println!("SU4  {:.4}", rouge_su("a b c", &["a c b"], 4));

    let gold = load_questions(bioqa::data_dir().join("gold_mini.json")).unwrap();
    let system = QaSystem::bundled().unwrap();
    let answers = gold
        .questions
        .iter()
        .map(|q| system.answer(&q.id, &q.body).to_record())
        .collect();
    let run = QuestionDataset::new(answers).unwrap();
    let report = evaluate_run(&gold, &run, &EvalConfig::default()).unwrap();
    println!("\n{}", report.to_table());
}
