//! The `bioqa` command line. [`run`] takes its streams as arguments so tests
//! can drive it without spawning a process.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::answer::{question_id, ExactAnswer, FullAnswer, PipelineConfig, QaSystem};
use crate::evalkit::{evaluate_run, Aggregation, EvalConfig, RougeConfig};
use crate::ingest::{
    bundled_corpus, bundled_type_model, load_corpus, load_dependencies, load_index, load_manifest,
    load_questions, load_resources_from, load_topic_models, load_topic_questions, load_type_model,
    save_index, save_topic_models, save_type_model, Manifest, QuestionDataset, ResourceBundle,
};
use crate::qclass::{
    classify_topics, extract_topic_features, train_type_classifier, FeatureSpace, LinearModel,
    QuestionType, TopicFeatureConfig, TypeTrainConfig,
};
use crate::retrieval::{
    build_index, Bm25Params, Corpus, FileStubSearcher, IndexMode, IndexedCorpus,
};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "bioqa",
    version,
    about = "Biomedical question answering over a local abstract corpus"
)]
struct Cli {
    /// Resource manifest. Without it the bundled resources, corpus and model are used.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Document index built by `bioqa index`. Required with --manifest for retrieval commands.
    #[arg(long, global = true)]
    index: Option<PathBuf>,
    /// Question type model; defaults to the manifest's model or the bundled one.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    stage: StageArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct StageArgs {
    #[arg(long, global = true, default_value_t = 1.2)]
    k1: f64,
    #[arg(long, global = true, default_value_t = 0.85)]
    b: f64,
    #[arg(long, global = true, default_value_t = 10)]
    top_docs: usize,
    #[arg(long, global = true, default_value_t = 10)]
    top_passages: usize,
    #[arg(long, global = true, default_value_t = 200)]
    retrieve_depth: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load and cross-check every resource in the manifest.
    Validate,
    /// Build an inverted index over the corpus.
    Index {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "document")]
        mode: String,
        /// Corpus JSONL; defaults to the manifest's corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Train the question type classifier.
    TrainType {
        /// Question dataset(s) with `type` labels; repeat to merge.
        #[arg(long, required = true)]
        data: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "patterns")]
        space: String,
        #[arg(long = "C", default_value_t = 1.01)]
        c: f64,
        #[arg(long, default_value_t = 100)]
        epochs: usize,
    },
    /// Train one binary model per clinical topic.
    TrainTopics {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Dependency pairs, `id<TAB>rel<TAB>head<TAB>dependent` per line.
        #[arg(long)]
        deps: Option<PathBuf>,
        #[arg(long, default_value = "BOW+BOB+BOS+BOCST+BOSDR")]
        features: String,
        #[arg(long = "C", default_value_t = 1.01)]
        c: f64,
    },
    /// Question type, plus topics when a topic model is given.
    Classify {
        question: String,
        #[arg(long)]
        topics_model: Option<PathBuf>,
    },
    /// Formulate the query, search and re-rank documents.
    RetrieveDocs {
        question: String,
        /// Directory of canned search responses used instead of the local index.
        #[arg(long)]
        remote_stub: Option<PathBuf>,
    },
    /// Rank sentences of the retrieved documents.
    RetrievePassages {
        question: String,
        #[arg(long)]
        remote_stub: Option<PathBuf>,
    },
    /// Answer one question, or every question of a dataset, as JSON lines.
    Answer {
        question: Option<String>,
        #[arg(long, conflicts_with = "question")]
        dataset: Option<PathBuf>,
        /// Write the run to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the classifier and treat every question as this type.
        #[arg(long = "type")]
        qtype: Option<String>,
        #[arg(long)]
        remote_stub: Option<PathBuf>,
    },
    /// Score a run against gold answers.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        run: PathBuf,
        /// Comma-separated sections: yesno,factoid,list,documents,snippets,rouge.
        #[arg(long, value_delimiter = ',')]
        metrics: Option<Vec<String>>,
        /// Report F-beta instead of recall.
        #[arg(long)]
        rouge_beta: Option<f64>,
        #[arg(long)]
        rouge_stem: bool,
        #[arg(long, default_value_t = 4)]
        max_skip: usize,
        #[arg(long, default_value = "max")]
        rouge_agg: String,
    },
    /// Read questions line by line and print answers.
    Repl,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Runtime(Error::io(path, e))
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                0
            } else {
                let _ = write!(err, "{text}");
                2
            };
        }
    };
    let result = Session {
        cli: &cli,
        out,
        err,
    }
    .dispatch(input);
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Session<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> CmdResult {
    let s = serde_json::to_string_pretty(value).expect("json values serialize");
    writeln!(out, "{s}").map_err(io_err(Path::new("<stdout>")))
}

fn parse_flag<T: std::str::FromStr<Err = Error>>(
    flag: &str,
    s: &str,
) -> std::result::Result<T, Failure> {
    s.parse()
        .map_err(|e: Error| Failure::Usage(format!("--{flag}: {e}")))
}

impl Session<'_> {
    fn print(&mut self, text: impl AsRef<str>) -> CmdResult {
        writeln!(self.out, "{}", text.as_ref()).map_err(io_err(Path::new("<stdout>")))
    }

    fn dispatch(&mut self, input: &mut dyn BufRead) -> CmdResult {
        match &self.cli.command {
            Command::Validate => self.validate(),
            Command::Index { out, mode, corpus } => self.index(out, mode, corpus.as_deref()),
            Command::TrainType {
                data,
                out,
                space,
                c,
                epochs,
            } => self.train_type(data, out, space, *c, *epochs),
            Command::TrainTopics {
                data,
                out,
                deps,
                features,
                c,
            } => self.train_topics(data, out, deps.as_deref(), features, *c),
            Command::Classify {
                question,
                topics_model,
            } => self.classify(question, topics_model.as_deref()),
            Command::RetrieveDocs {
                question,
                remote_stub,
            } => self.retrieve_docs(question, remote_stub.as_deref()),
            Command::RetrievePassages {
                question,
                remote_stub,
            } => self.retrieve_passages(question, remote_stub.as_deref()),
            Command::Answer {
                question,
                dataset,
                out,
                qtype,
                remote_stub,
            } => self.answer(
                question.as_deref(),
                dataset.as_deref(),
                out.as_deref(),
                qtype.as_deref(),
                remote_stub.as_deref(),
            ),
            Command::Eval {
                gold,
                run,
                metrics,
                rouge_beta,
                rouge_stem,
                max_skip,
                rouge_agg,
            } => {
                let config = EvalConfig {
                    rouge: RougeConfig {
                        beta: *rouge_beta,
                        stem: *rouge_stem,
                        max_skip: *max_skip,
                        aggregation: parse_flag::<Aggregation>("rouge-agg", rouge_agg)?,
                    },
                    sections: metrics.clone(),
                };
                self.eval(gold, run, config)
            }
            Command::Repl => self.repl(input),
        }
    }

    fn manifest(&self) -> std::result::Result<Option<Manifest>, Failure> {
        Ok(match &self.cli.manifest {
            Some(p) => Some(load_manifest(p)?),
            None => None,
        })
    }

    fn resources(
        &self,
        manifest: Option<&Manifest>,
    ) -> std::result::Result<ResourceBundle, Failure> {
        Ok(match manifest {
            Some(m) => load_resources_from(m)?,
            None => ResourceBundle::bundled(),
        })
    }

    fn corpus(
        &self,
        manifest: Option<&Manifest>,
        explicit: Option<&Path>,
    ) -> std::result::Result<Corpus, Failure> {
        let path = explicit
            .map(Path::to_path_buf)
            .or_else(|| manifest.and_then(Manifest::corpus_path));
        let docs = match path {
            Some(p) => load_corpus(p)?,
            None if manifest.is_some() => {
                return Err(Failure::Usage(
                    "the manifest lists no corpus; pass --corpus".into(),
                ))
            }
            None => bundled_corpus(),
        };
        Ok(Corpus::new(docs)?)
    }

    fn type_model(&self, manifest: Option<&Manifest>) -> std::result::Result<LinearModel, Failure> {
        if let Some(p) = &self.cli.model {
            return Ok(load_type_model(p)?);
        }
        match manifest {
            Some(m) => match m.model_path() {
                Some(p) => Ok(load_type_model(p)?),
                None => Err(Failure::Usage(
                    "no type model: pass --model or list one in the manifest".into(),
                )),
            },
            None => Ok(bundled_type_model()),
        }
    }

    fn pipeline_config(&self) -> std::result::Result<PipelineConfig, Failure> {
        let s = &self.cli.stage;
        let config = PipelineConfig {
            retrieve_depth: s.retrieve_depth,
            top_docs: s.top_docs,
            top_passages: s.top_passages,
            bm25: Bm25Params::new(s.k1, s.b).map_err(|e| Failure::Usage(e.to_string()))?,
            ..PipelineConfig::default()
        };
        config
            .validate()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(config)
    }

    /// Resources, corpus, index and model for the retrieval and answering commands.
    fn system(&self, remote_stub: Option<&Path>) -> std::result::Result<QaSystem, Failure> {
        let config = self.pipeline_config()?;
        let manifest = self.manifest()?;
        let resources = self.resources(manifest.as_ref())?;
        let corpus = self.corpus(manifest.as_ref(), None)?;
        let index: IndexedCorpus = match (&self.cli.index, &manifest) {
            (Some(p), _) => load_index(p)?,
            (None, None) => {
                build_index(&corpus.units(), IndexMode::Document, &resources.analyzer())?
            }
            (None, Some(_)) => {
                return Err(Failure::Usage(
                    "--index is required with --manifest (build one with `bioqa index`)".into(),
                ))
            }
        };
        let model = self.type_model(manifest.as_ref())?;
        let system = QaSystem::new(resources, corpus, index, model, config)?;
        Ok(match remote_stub {
            Some(dir) => system.with_remote(Box::new(FileStubSearcher::new(dir))),
            None => system,
        })
    }

    fn validate(&mut self) -> CmdResult {
        let manifest = self.manifest()?;
        let resources = self.resources(manifest.as_ref())?;
        let corpus = self.corpus(manifest.as_ref(), None).ok();
        let mut report = json!({
            "ok": true,
            "manifest": self.cli.manifest.as_ref().map(|p| p.display().to_string()),
            "files": resources.files,
            "concepts": resources.lexicon.len(),
        });
        if let Some(m) = &manifest {
            if let Some(p) = m.corpus_path() {
                report["corpus_documents"] = json!(load_corpus(&p)?.len());
            }
            if let Some(p) = m.model_path() {
                let model = load_type_model(&p)?;
                report["model"] = json!({"path": p.display().to_string(), "space": model.meta.space, "labels": model.labels});
            }
            if let Some(p) = m.topic_model_path() {
                report["topic_models"] = json!(load_topic_models(&p)?.models.len());
            }
        } else if let Some(c) = corpus {
            report["corpus_documents"] = json!(c.len());
        }
        match self.cli.format {
            Format::Json => write_json(self.out, &report),
            Format::Text => {
                for f in &resources.files {
                    self.print(format!(
                        "ok  {:<14}{}  {}",
                        f.name,
                        &f.sha256[..12],
                        f.path.display()
                    ))?;
                }
                self.print(format!(
                    "{} concepts; all resources valid",
                    resources.lexicon.len()
                ))
            }
        }
    }

    fn index(&mut self, out: &Path, mode: &str, corpus: Option<&Path>) -> CmdResult {
        let mode: IndexMode = parse_flag("mode", mode)?;
        let manifest = self.manifest()?;
        let resources = self.resources(manifest.as_ref())?;
        let corpus = self.corpus(manifest.as_ref(), corpus)?;
        let units = match mode {
            IndexMode::Document => corpus.units(),
            IndexMode::Passage => {
                crate::retrieval::extract_passages(corpus.docs(), &resources.abbreviations)
                    .into_iter()
                    .map(|p| (format!("{}#{}", p.doc_id, p.sent_index), p.text))
                    .collect()
            }
        };
        let index = build_index(&units, mode, &resources.analyzer())?;
        save_index(out, &index)?;
        let summary = json!({
            "out": out.display().to_string(),
            "mode": mode.to_string(),
            "units": index.n,
            "terms": index.postings.len(),
            "avg_len": index.avg_len,
        });
        match self.cli.format {
            Format::Json => write_json(self.out, &summary),
            Format::Text => self.print(format!(
                "indexed {} {} units ({} terms) into {}",
                index.n,
                mode,
                index.postings.len(),
                out.display()
            )),
        }
    }

    fn train_type(
        &mut self,
        data: &[PathBuf],
        out: &Path,
        space: &str,
        c: f64,
        epochs: usize,
    ) -> CmdResult {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Failure::Usage(format!("--C must be positive, got {c}")));
        }
        let space: FeatureSpace = parse_flag("space", space)?;
        let manifest = self.manifest()?;
        let resources = self.resources(manifest.as_ref())?;
        let mut examples = Vec::new();
        for p in data {
            examples.extend(load_questions(p)?.labeled());
        }
        let extractor = crate::qclass::FeatureExtractor::new(resources.tags, resources.patterns);
        let config = TypeTrainConfig {
            space,
            c,
            seed: self.cli.seed,
            epochs,
            labels: None,
        };
        let model = train_type_classifier(&examples, &extractor, &config)?;
        let correct = examples
            .iter()
            .filter(|q| model.predict(&extractor.extract(&q.text, space)) == q.qtype)
            .count();
        save_type_model(out, &model)?;
        let summary = json!({
            "out": out.display().to_string(),
            "space": space,
            "examples": examples.len(),
            "labels": model.labels,
            "training_accuracy": correct as f64 / examples.len() as f64,
            "seed": self.cli.seed,
            "warnings": model.meta.warnings,
        });
        match self.cli.format {
            Format::Json => write_json(self.out, &summary),
            Format::Text => self.print(format!(
                "trained {space} model on {} questions ({correct} fit), seed {}; wrote {}",
                examples.len(),
                self.cli.seed,
                out.display()
            )),
        }
    }

    fn train_topics(
        &mut self,
        data: &Path,
        out: &Path,
        deps: Option<&Path>,
        features: &str,
        c: f64,
    ) -> CmdResult {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Failure::Usage(format!("--C must be positive, got {c}")));
        }
        let features: TopicFeatureConfig = parse_flag("features", features)?;
        let manifest = self.manifest()?;
        let resources = self.resources(manifest.as_ref())?;
        let mut dataset = load_topic_questions(data)?;
        if let Some(p) = deps {
            dataset.attach_dependencies(&load_dependencies(p)?);
        }
        let set = crate::qclass::train_topic_models(
            &dataset.questions,
            &features,
            self.cli.seed,
            c,
            &resources.stopwords,
            &resources.lexicon,
        )?;
        save_topic_models(out, &set)?;
        let topics: Vec<String> = set.models.keys().map(|t| t.to_string()).collect();
        let summary = json!({
            "out": out.display().to_string(),
            "questions": dataset.questions.len(),
            "topics": topics,
            "seed": self.cli.seed,
            "warnings": set.warnings,
        });
        match self.cli.format {
            Format::Json => write_json(self.out, &summary),
            Format::Text => self.print(format!(
                "trained {} topic models on {} questions, seed {}; wrote {}",
                topics.len(),
                dataset.questions.len(),
                self.cli.seed,
                out.display()
            )),
        }
    }

    fn classify(&mut self, question: &str, topics_model: Option<&Path>) -> CmdResult {
        require_question(question)?;
        let manifest = self.manifest()?;
        let resources = self.resources(manifest.as_ref())?;
        let model = self.type_model(manifest.as_ref())?;
        let extractor = crate::qclass::FeatureExtractor::new(
            resources.tags.clone(),
            resources.patterns.clone(),
        );
        let qtype = crate::qclass::classify_type(&model, &extractor, question);
        let topics_path = topics_model
            .map(Path::to_path_buf)
            .or_else(|| manifest.as_ref().and_then(Manifest::topic_model_path));
        let topics: Option<Vec<String>> = match topics_path {
            Some(p) => {
                let set = load_topic_models(&p)?;
                let fv = extract_topic_features(
                    question,
                    &set.config,
                    None,
                    &resources.stopwords,
                    &resources.lexicon,
                );
                Some(
                    classify_topics(&set, &fv)
                        .into_iter()
                        .map(|t| t.to_string())
                        .collect(),
                )
            }
            None => None,
        };
        match self.cli.format {
            Format::Json => write_json(
                self.out,
                &json!({"question": question, "type": qtype, "topics": topics}),
            ),
            Format::Text => {
                self.print(format!("type: {qtype}"))?;
                match topics {
                    Some(t) => self.print(format!("topics: {}", t.join(", "))),
                    None => Ok(()),
                }
            }
        }
    }

    fn retrieve_docs(&mut self, question: &str, remote_stub: Option<&Path>) -> CmdResult {
        require_question(question)?;
        let system = self.system(remote_stub)?;
        let r = system.retrieve_documents(question);
        match self.cli.format {
            Format::Json => write_json(
                self.out,
                &json!({"question": question, "query": r.query.boolean(), "documents": r.docs, "flags": r.flags}),
            ),
            Format::Text => {
                self.print(format!("query: {}", r.query.boolean()))?;
                for d in &r.docs {
                    let title = system
                        .corpus
                        .get(&d.doc_id)
                        .map_or("", |doc| doc.title.as_str());
                    self.print(format!(
                        "{:>3}  {:.4}  {}  {}",
                        d.rank, d.score, d.doc_id, title
                    ))?;
                }
                Ok(())
            }
        }
    }

    fn retrieve_passages(&mut self, question: &str, remote_stub: Option<&Path>) -> CmdResult {
        require_question(question)?;
        let system = self.system(remote_stub)?;
        let r = system.retrieve_documents(question);
        let passages = system.retrieve_passages(question, &r);
        match self.cli.format {
            Format::Json => write_json(
                self.out,
                &json!({"question": question, "query": r.query.boolean(), "passages": passages, "flags": r.flags}),
            ),
            Format::Text => {
                for (i, p) in passages.iter().enumerate() {
                    self.print(format!(
                        "{:>3}  {:.4}  {}[{}]  {}",
                        i + 1,
                        p.score,
                        p.passage.doc_id,
                        p.passage.sent_index,
                        p.passage.text
                    ))?;
                }
                Ok(())
            }
        }
    }

    fn answer(
        &mut self,
        question: Option<&str>,
        dataset: Option<&Path>,
        out: Option<&Path>,
        qtype: Option<&str>,
        remote_stub: Option<&Path>,
    ) -> CmdResult {
        let items: Vec<(String, String)> = match (question, dataset) {
            (Some(q), None) => {
                require_question(q)?;
                vec![(question_id(q), q.to_string())]
            }
            (None, Some(p)) => load_questions(p)?
                .questions
                .into_iter()
                .map(|q| (q.id, q.body))
                .collect(),
            _ => {
                return Err(Failure::Usage(
                    "answer needs a question or --dataset".into(),
                ))
            }
        };
        let mut system = self.system(remote_stub)?;
        if let Some(t) = qtype {
            system.config.force_type = Some(parse_flag::<QuestionType>("type", t)?);
        }
        let answers: Vec<FullAnswer> = items
            .par_iter()
            .map(|(id, q)| system.answer(id, q))
            .collect();
        let run: String = answers.iter().map(|a| a.to_json_line() + "\n").collect();
        match out {
            Some(p) => {
                fs::write(p, &run).map_err(io_err(p))?;
                let _ = writeln!(
                    self.err,
                    "wrote {} answers to {}",
                    answers.len(),
                    p.display()
                );
                Ok(())
            }
            None => match self.cli.format {
                Format::Json => self
                    .out
                    .write_all(run.as_bytes())
                    .map_err(io_err(Path::new("<stdout>"))),
                Format::Text => {
                    for a in &answers {
                        self.print_answer(a)?;
                    }
                    Ok(())
                }
            },
        }
    }

    fn print_answer(&mut self, a: &FullAnswer) -> CmdResult {
        self.print(format!("[{}] {}", a.question_type, a.question))?;
        let exact = match &a.exact {
            Some(ExactAnswer::Yesno(v)) => v.to_string(),
            Some(e @ (ExactAnswer::Factoid(_) | ExactAnswer::List(_))) => e
                .entities()
                .iter()
                .map(|x| x.name.as_str())
                .collect::<Vec<_>>()
                .join("; "),
            None => "-".into(),
        };
        self.print(format!("exact: {exact}"))?;
        self.print(format!("ideal: {}", a.ideal.text))?;
        for p in a.supporting.iter().take(3) {
            self.print(format!(
                "  from {} sentence {}: {}",
                p.passage.doc_id, p.passage.sent_index, p.passage.text
            ))?;
        }
        if !a.flags.is_empty() {
            self.print(format!("flags: {}", a.flags.join(", ")))?;
        }
        Ok(())
    }

    fn eval(&mut self, gold: &Path, run: &Path, config: EvalConfig) -> CmdResult {
        config
            .validate()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let gold: QuestionDataset = load_questions(gold)?;
        let run: QuestionDataset = load_questions(run)?;
        let report = evaluate_run(&gold, &run, &config)?;
        match self.cli.format {
            Format::Json => self.print(report.to_json()),
            Format::Text => self.print(report.to_table()),
        }
    }

    fn repl(&mut self, input: &mut dyn BufRead) -> CmdResult {
        let system = self.system(None)?;
        let mut line = String::new();
        loop {
            line.clear();
            if input
                .read_line(&mut line)
                .map_err(io_err(Path::new("<stdin>")))?
                == 0
            {
                return Ok(());
            }
            let q = line.trim();
            if q.is_empty() {
                continue;
            }
            let a = system.answer(&question_id(q), q);
            match self.cli.format {
                Format::Json => self.print(a.to_json_line())?,
                Format::Text => {
                    self.print_answer(&a)?;
                    self.print("")?;
                }
            }
            self.out.flush().map_err(io_err(Path::new("<stdout>")))?;
        }
    }
}

fn require_question(q: &str) -> CmdResult {
    if q.trim().is_empty() {
        Err(Failure::Usage("empty question".into()))
    } else {
        Ok(())
    }
}
