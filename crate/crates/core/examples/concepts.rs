//! Dictionary concept recognition, path similarity and word sentiment.

use bioqa::conceptlex::TagClass;
use bioqa::ingest::ResourceBundle;

fn main() {
    let res = ResourceBundle::bundled();
    let text = "Is Tuberous Sclerosis a genetic disease with oral lesions?";
    for m in res.lexicon.recognize(text) {
        let c = res.lexicon.get(&m.cui).unwrap();
        println!(
            "{:<22} {}  {} ({})",
            m.matched, m.cui, c.preferred, c.semantic_type
        );
    }

    let ids = res.lexicon.concept_ids(text);
    println!();
    for a in &ids {
        for b in &ids {
            if a < b {
                let sim = res.graph.path_similarity(a, b).unwrap();
                println!(
                    "sim({a}, {b}) = {}",
                    sim.map_or("none".to_string(), |s| format!("{s:.3}"))
                );
            }
        }
    }

    println!();
    for (w, class) in [
        ("effective", TagClass::A),
        ("failed", TagClass::V),
        ("safe", TagClass::A),
    ] {
        println!("{w:<10} {:+.3}", res.sentiment.word_sentiment(w, class));
    }
}
