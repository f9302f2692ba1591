//! Acceptance checks, one line per criterion. Run with
//! `cargo test --test acceptance`; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bioqa::answer::{answer_pipeline, answer_yesno, ExactAnswer, QaSystem, YesNo};
use bioqa::evalkit::{average_precision, mrr, rouge_n, rouge_su};
use bioqa::ingest::{bundled_corpus, bundled_questions, load_index, save_index, ResourceBundle};
use bioqa::qclass::{
    classify_type, train_type_classifier, FeatureExtractor, FeatureSpace, FeatureVector,
    QuestionType, TypeTrainConfig,
};
use bioqa::retrieval::{bm25_score, build_index, rerank_documents, Corpus, IndexMode};
use common::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bm25_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (stop, lex) = plain_analyzer_parts();
    let mut worst = 0.0f64;
    let mut scored = 0;
    for _ in 0..250 {
        let case = random_bm25_case(&mut rng);
        let index = index_units(&case.units, &stop, &lex);
        for (i, (id, _)) in case.units.iter().enumerate() {
            let got = bm25_score(&case.query, id, &index, 1.2, 0.85).map_err(|e| e.to_string())?;
            worst = worst.max((got - bm25_direct(&case.units, &case.query, i, 1.2, 0.85)).abs());
            scored += 1;
        }
    }
    ensure(worst < 1e-9, format!("max deviation {worst:e}"))?;
    let units = vec![
        ("a".to_string(), "ka kb".to_string()),
        ("b".to_string(), "kc kd".to_string()),
        ("c".to_string(), "ke kf".to_string()),
    ];
    let s = bm25_score(
        &["ka".to_string()],
        "a",
        &index_units(&units, &stop, &lex),
        1.2,
        0.85,
    )
    .map_err(|e| e.to_string())?;
    let dev = (s - (5.0f64 / 3.0).ln()).abs();
    ensure(dev < 1e-9, format!("N=3 case gives {s}, expected ln(5/3)"))?;
    Ok(format!(
        "250 corpora, {scored} scores, max deviation {worst:.1e}; N=3 case off by {dev:.1e}"
    ))
}

fn rerank_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..150 {
        let case = random_rerank_case(&mut rng);
        let got: Vec<(String, f64)> =
            rerank_documents(&case.question, &case.docs, &case.lexicon, &case.graph, 10)
                .into_iter()
                .map(|d| (d.doc_id, d.score))
                .collect();
        let want = rerank_brute(&case, 10);
        ensure(got == want, format!("instance {k}: {got:?} vs {want:?}"))?;
    }
    Ok("150 instances, exact rank agreement".into())
}

fn metric_oracles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..250 {
        let (ranked, gold) = random_ranking(&mut rng);
        let ap = average_precision(&ranked, &gold).map_err(|e| e.to_string())?;
        worst = worst.max((ap - ap_enumerate(&ranked, &gold)).abs());

        let ranks: Vec<Option<usize>> = (0..rand::Rng::gen_range(&mut rng, 0..8))
            .map(|_| {
                rand::Rng::gen_bool(&mut rng, 0.7).then(|| rand::Rng::gen_range(&mut rng, 1..15))
            })
            .collect();
        worst = worst.max((mrr(&ranks) - mrr_direct(&ranks)).abs());

        let cand = random_text(&mut rng, 8);
        let refs: Vec<String> = (0..rand::Rng::gen_range(&mut rng, 1..=3))
            .map(|_| random_text(&mut rng, 8))
            .collect();
        for n in 1..=3 {
            worst =
                worst.max((rouge_n(&cand, &refs, n) - rouge_n_enumerate(&cand, &refs, n)).abs());
        }
        worst = worst.max((rouge_su(&cand, &refs, 4) - rouge_su_enumerate(&cand, &refs, 4)).abs());
    }
    ensure(worst < 1e-12, format!("max deviation {worst:e}"))?;
    let ap = average_precision(&["g1", "x", "g2"], &["g1", "g2"]).map_err(|e| e.to_string())?;
    ensure(ap == 5.0 / 6.0, format!("AP hand case {ap}"))?;
    let m = mrr(&[Some(2), Some(4)]);
    ensure(m == 0.375, format!("MRR hand case {m}"))?;
    let r = rouge_n("a b c d", &["a b c e"], 2);
    ensure(r == 2.0 / 3.0, format!("ROUGE-2 hand case {r}"))?;
    Ok(format!(
        "250 instances each, max deviation {worst:.1e}; hand cases exact"
    ))
}

fn pattern_engine() -> Check {
    let fx = FeatureExtractor::bundled();
    let res = ResourceBundle::bundled();
    let ds = bundled_questions();
    let yesno: Vec<_> = ds
        .questions
        .iter()
        .filter(|q| q.qtype == QuestionType::Yesno)
        .collect();
    ensure(
        yesno.len() == 9,
        format!("{} yes/no questions in the bundled set", yesno.len()),
    )?;
    for q in &yesno {
        let tagged = fx.tag(&q.body);
        let hit = res
            .patterns
            .of_category(QuestionType::Yesno)
            .any(|p| p.find(&tagged).is_some());
        ensure(hit, format!("no yes/no match for {:?}", q.body))?;
    }
    let fv = fx.extract(
        "What is the definition of autophagy?",
        FeatureSpace::Patterns,
    );
    let want = FeatureVector::from_counts([("what", 1), ("VBZ", 1), ("definition", 1)]);
    ensure(fv == want, format!("definition features {fv:?}"))?;
    Ok("9/9 yes/no questions match; definition features exact".into())
}

fn classifier() -> Check {
    let fx = FeatureExtractor::bundled();
    let examples = bundled_questions().labeled();
    let cfg = TypeTrainConfig::default();
    let a = train_type_classifier(&examples, &fx, &cfg).map_err(|e| e.to_string())?;
    let b = train_type_classifier(&examples, &fx, &cfg).map_err(|e| e.to_string())?;
    ensure(a.to_json() == b.to_json(), "two seeded runs differ")?;
    let correct = examples
        .iter()
        .filter(|q| classify_type(&a, &fx, &q.text) == q.qtype)
        .count();
    let acc = correct as f64 / examples.len() as f64;

    let labels: Vec<QuestionType> = a.labels.clone();
    let xs: Vec<BTreeMap<String, u32>> = examples
        .iter()
        .map(|q| fx.extract(&q.text, FeatureSpace::Patterns).as_map().clone())
        .collect();
    let ys: Vec<usize> = examples
        .iter()
        .map(|q| labels.iter().position(|l| *l == q.qtype).unwrap())
        .collect();
    let reachable = perceptron_reachable_accuracy(&xs, &ys, labels.len(), 1000)
        .ok_or("perceptron did not converge on the conflict-free set")?;
    ensure(
        reachable >= 0.9,
        format!("no linear model can exceed {reachable:.3}"),
    )?;
    ensure(
        acc >= 0.9,
        format!("training accuracy {correct}/{} = {acc:.3}", examples.len()),
    )?;
    Ok(format!(
        "bit-reproducible; training accuracy {correct}/{} = {acc:.3}; perceptron-verified reachable {reachable:.3}",
        examples.len()
    ))
}

fn yesno_vote() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..150 {
        let mut case = random_vote_case(&mut rng);
        let lex = vote_lexicon(&case);
        let v = answer_yesno(&case.passages, &lex, &case.tags);
        let (yes, pos, neg) = vote_brute(&case);
        ensure(
            (v.answer == YesNo::Yes, v.positive, v.negative) == (yes, pos, neg),
            format!(
                "instance {k}: got {:?}/{}/{}, brute force {yes}/{pos}/{neg}",
                v.answer, v.positive, v.negative
            ),
        )?;
        for _ in 0..50 {
            case.passages.shuffle(&mut rng);
            let p = answer_yesno(&case.passages, &lex, &case.tags);
            ensure(
                (p.answer, p.positive, p.negative) == (v.answer, v.positive, v.negative),
                format!("instance {k}: order changed the vote"),
            )?;
        }
    }
    Ok("150 instances match brute force; 50 permutations each leave the vote unchanged".into())
}

fn end_to_end() -> Check {
    let q = "What is the cause of Phthiriasis Palpebrarum?";
    let system = QaSystem::bundled().map_err(|e| e.to_string())?;
    let a = answer_pipeline(q, &system).map_err(|e| e.to_string())?;
    ensure(
        a.question_type == QuestionType::Factoid,
        format!("classified as {}", a.question_type),
    )?;
    let top = match &a.exact {
        Some(ExactAnswer::Factoid(e)) if !e.is_empty() => e[0].name.clone(),
        other => return Err(format!("no factoid answer: {other:?}")),
    };
    ensure(top == "Pthirus pubis", format!("top-1 is {top:?}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let gold = bioqa::data_dir().join("gold_mini.json");
    let run_file = dir.path().join("run.jsonl");
    let cli = |args: &[&str]| {
        let mut argv = vec!["bioqa".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = bioqa::cli::run(argv, &mut std::io::empty(), &mut out, &mut err);
        (
            code,
            String::from_utf8_lossy(&out).into_owned(),
            String::from_utf8_lossy(&err).into_owned(),
        )
    };
    let (code, _, err) = cli(&[
        "answer",
        "--dataset",
        gold.to_str().unwrap(),
        "--out",
        run_file.to_str().unwrap(),
    ]);
    ensure(code == 0, format!("answer failed: {err}"))?;
    let (code, out, err) = cli(&[
        "eval",
        "--gold",
        gold.to_str().unwrap(),
        "--run",
        run_file.to_str().unwrap(),
    ]);
    ensure(code == 0, format!("eval failed: {err}"))?;
    let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let per_q = report["per_question"]
        .as_array()
        .and_then(|qs| qs.iter().find(|x| x["id"] == "mini-phth"))
        .ok_or("mini-phth missing from the report")?;
    let m = per_q["metrics"]["factoid.mrr"].as_f64().unwrap_or(-1.0);
    ensure(m == 1.0, format!("MRR for the question is {m}"))?;
    Ok(format!(
        "FACTOID, top-1 {top:?}; answer then eval gives MRR {m}"
    ))
}

fn persistence() -> Check {
    let res = ResourceBundle::bundled();
    let corpus = Corpus::new(bundled_corpus()).map_err(|e| e.to_string())?;
    let index = build_index(&corpus.units(), IndexMode::Document, &res.analyzer())
        .map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    save_index(&a, &index).map_err(|e| e.to_string())?;
    save_index(&b, &index).map_err(|e| e.to_string())?;
    let bytes_a = std::fs::read(&a).map_err(|e| e.to_string())?;
    let bytes_b = std::fs::read(&b).map_err(|e| e.to_string())?;
    ensure(bytes_a == bytes_b, "two saves differ")?;
    let back = load_index(&a).map_err(|e| e.to_string())?;
    ensure(back == index, "loaded index differs from the saved one")?;
    Ok(format!(
        "{} units, {} bytes, identical across saves and after reload",
        index.n,
        bytes_a.len()
    ))
}

type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("BM25 oracle", bm25_oracle, Some(Duration::from_secs(5))),
        (
            "re-ranking oracle",
            rerank_oracle,
            Some(Duration::from_secs(5)),
        ),
        ("metric oracles", metric_oracles, None),
        (
            "pattern engine",
            pattern_engine,
            Some(Duration::from_secs(1)),
        ),
        (
            "classifier determinism and accuracy",
            classifier,
            Some(Duration::from_secs(10)),
        ),
        ("yes/no vote", yesno_vote, None),
        ("end-to-end smoke", end_to_end, Some(Duration::from_secs(5))),
        ("persistence", persistence, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:.0?}"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
