mod common;

use bioqa::answer::answer_yesno;
use bioqa::evalkit::{average_precision, mrr, rouge_n, rouge_su};
use bioqa::retrieval::{bm25_score, rerank_documents};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bm25_matches_direct_formula(seed in any::<u64>(), k1 in 0.1f64..3.0, b in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let case = random_bm25_case(&mut rng);
        let (stop, lex) = plain_analyzer_parts();
        let index = index_units(&case.units, &stop, &lex);
        for (i, (id, _)) in case.units.iter().enumerate() {
            let got = bm25_score(&case.query, id, &index, k1, b).unwrap();
            let want = bm25_direct(&case.units, &case.query, i, k1, b);
            prop_assert!((got - want).abs() < 1e-9, "unit {id}: {got} vs {want}");
        }
    }

    #[test]
    fn bm25_is_monotone_in_term_frequency(extra in 1usize..5) {
        // one more occurrence of a query term never lowers the score
        let base = vec![
            ("u0".to_string(), "ka kb".to_string()),
            ("u1".to_string(), "kc kd".to_string()),
            ("u2".to_string(), "ke kf".to_string()),
        ];
        let mut more = base.clone();
        more[0].1 = format!("{} {}", more[0].1, vec!["ka"; extra].join(" "));
        let (stop, lex) = plain_analyzer_parts();
        let q = vec!["ka".to_string()];
        let s0 = bm25_score(&q, "u0", &index_units(&base, &stop, &lex), 1.2, 0.0).unwrap();
        let s1 = bm25_score(&q, "u0", &index_units(&more, &stop, &lex), 1.2, 0.0).unwrap();
        prop_assert!(s1 >= s0);
    }

    #[test]
    fn rerank_matches_brute_force(seed in any::<u64>(), m in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let case = random_rerank_case(&mut rng);
        let got: Vec<(String, f64)> = rerank_documents(&case.question, &case.docs, &case.lexicon, &case.graph, m)
            .into_iter()
            .map(|d| (d.doc_id, d.score))
            .collect();
        prop_assert_eq!(got, rerank_brute(&case, m));
    }

    #[test]
    fn average_precision_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ranked, gold) = random_ranking(&mut rng);
        let got = average_precision(&ranked, &gold).unwrap();
        prop_assert!((got - ap_enumerate(&ranked, &gold)).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&got));
    }

    #[test]
    fn mrr_matches_direct(ranks in prop::collection::vec(prop::option::of(1usize..20), 0..10)) {
        prop_assert!((mrr(&ranks) - mrr_direct(&ranks)).abs() < 1e-12);
    }

    #[test]
    fn rouge_matches_enumeration(seed in any::<u64>(), n in 1usize..4, skip in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cand = random_text(&mut rng, 8);
        let refs: Vec<String> = (0..rand::Rng::gen_range(&mut rng, 1..=3)).map(|_| random_text(&mut rng, 8)).collect();
        let got = rouge_n(&cand, &refs, n);
        prop_assert!((got - rouge_n_enumerate(&cand, &refs, n)).abs() < 1e-12);
        let got = rouge_su(&cand, &refs, skip);
        prop_assert!((got - rouge_su_enumerate(&cand, &refs, skip)).abs() < 1e-12);
    }

    #[test]
    fn rouge_of_identical_texts_is_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_text(&mut rng, 8);
        let n_tokens = t.split_whitespace().count();
        prop_assume!(n_tokens >= 2);
        prop_assert_eq!(rouge_n(&t, std::slice::from_ref(&t), 2), 1.0);
        prop_assert_eq!(rouge_su(&t, std::slice::from_ref(&t), 4), 1.0);
    }

    #[test]
    fn yesno_vote_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut case = random_vote_case(&mut rng);
        let lex = vote_lexicon(&case);
        let v = answer_yesno(&case.passages, &lex, &case.tags);
        let (yes, pos, neg) = vote_brute(&case);
        prop_assert_eq!((v.answer == bioqa::answer::YesNo::Yes, v.positive, v.negative), (yes, pos, neg));
        for _ in 0..10 {
            case.passages.shuffle(&mut rng);
            let p = answer_yesno(&case.passages, &lex, &case.tags);
            prop_assert_eq!((p.answer, p.positive, p.negative), (v.answer, v.positive, v.negative));
        }
    }
}

#[test]
fn bm25_single_occurrence_case() {
    // N = 3, one unit holds the term once, every unit has the average length
    let units = vec![
        ("a".to_string(), "ka kb".to_string()),
        ("b".to_string(), "kc kd".to_string()),
        ("c".to_string(), "ke kf".to_string()),
    ];
    let (stop, lex) = plain_analyzer_parts();
    let index = index_units(&units, &stop, &lex);
    let s = bm25_score(&["ka".to_string()], "a", &index, 1.2, 0.85).unwrap();
    assert!((s - (5.0f64 / 3.0).ln()).abs() < 1e-9);
}
