use std::collections::{BTreeMap, BTreeSet, HashMap};

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FeatureExtractor, FeatureSpace, FeatureVector, QuestionType};
use crate::{Error, Result};

pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledQuestion {
    pub id: String,
    pub text: String,
    #[serde(rename = "type")]
    pub qtype: QuestionType,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeTrainConfig {
    pub space: FeatureSpace,
    pub c: f64,
    pub seed: u64,
    pub epochs: usize,
    /// Labels the model must cover. `None` means the labels present in the data.
    pub labels: Option<Vec<QuestionType>>,
}

impl Default for TypeTrainConfig {
    fn default() -> Self {
        Self {
            space: FeatureSpace::Patterns,
            c: 1.01,
            seed: 42,
            epochs: 100,
            labels: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub space: FeatureSpace,
    pub c: f64,
    pub seed: u64,
    pub epochs: usize,
    pub examples: usize,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// Multiclass linear model; labels are kept in tie-break order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub version: u32,
    pub labels: Vec<QuestionType>,
    pub weights: Vec<BTreeMap<String, f64>>,
    pub bias: Vec<f64>,
    pub meta: TrainingMeta,
}

fn dot(weights: &BTreeMap<String, f64>, fv: &FeatureVector) -> f64 {
    fv.iter()
        .map(|(f, c)| weights.get(f).copied().unwrap_or(0.0) * f64::from(c))
        .sum()
}

impl LinearModel {
    pub fn scores(&self, fv: &FeatureVector) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| dot(w, fv) + b)
            .collect()
    }

    /// Highest-scoring label; the earliest label wins ties.
    pub fn predict(&self, fv: &FeatureVector) -> QuestionType {
        let scores = self.scores(fv);
        let mut best = 0;
        for (k, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = k;
            }
        }
        self.labels[best]
    }

    pub fn check_space(&self, requested: FeatureSpace) -> Result<()> {
        if self.meta.space == requested {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                model: self.meta.space.to_string(),
                requested: requested.to_string(),
            })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(source_name: &str, json: &str) -> Result<Self> {
        let json_err = |e: serde_json::Error| Error::Json {
            source_name: source_name.to_string(),
            message: e.to_string(),
        };
        let value: serde_json::Value = serde_json::from_str(json).map_err(json_err)?;
        check_version(&value)?;
        serde_json::from_value(value).map_err(json_err)
    }
}

pub(crate) fn check_version(value: &serde_json::Value) -> Result<()> {
    let found = value.get("version").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
    if found != MODEL_VERSION {
        return Err(Error::VersionMismatch {
            expected: MODEL_VERSION,
            found,
        });
    }
    Ok(())
}

/// Binary linear model; positive score means "in class".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BinaryModel {
    pub weights: BTreeMap<String, f64>,
    pub bias: f64,
}

impl BinaryModel {
    pub fn score(&self, fv: &FeatureVector) -> f64 {
        dot(&self.weights, fv) + self.bias
    }
}

/// Features mapped to dense column indices in sorted order.
struct Design {
    names: Vec<String>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl Design {
    fn new(vectors: &[FeatureVector]) -> Self {
        let names: Vec<String> = vectors
            .iter()
            .flat_map(|v| v.iter().map(|(f, _)| f.to_string()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let rows = vectors
            .iter()
            .map(|v| v.iter().map(|(f, c)| (index[f], f64::from(c))).collect())
            .collect();
        Design { names, rows }
    }

    fn to_map(&self, dense: &[f64], scale: f64) -> BTreeMap<String, f64> {
        self.names
            .iter()
            .zip(dense)
            .filter(|(_, &w)| w != 0.0)
            .map(|(n, &w)| (n.clone(), w * scale))
            .collect()
    }
}

/// Weight matrix stored as `scale * v` so the per-step shrink is O(1).
struct ScaledWeights {
    v: Vec<Vec<f64>>,
    scale: f64,
}

impl ScaledWeights {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            v: vec![vec![0.0; cols]; rows],
            scale: 1.0,
        }
    }

    fn score(&self, k: usize, x: &[(usize, f64)], bias_col: Option<usize>) -> f64 {
        let row = &self.v[k];
        let mut s: f64 = x.iter().map(|&(j, c)| row[j] * c).sum();
        if let Some(b) = bias_col {
            s += row[b];
        }
        s * self.scale
    }

    fn shrink(&mut self, factor: f64) {
        if factor <= 0.0 {
            for row in &mut self.v {
                row.iter_mut().for_each(|w| *w = 0.0);
            }
            self.scale = 1.0;
        } else {
            self.scale *= factor;
        }
    }

    fn add(&mut self, k: usize, x: &[(usize, f64)], bias_col: Option<usize>, step: f64) {
        let d = step / self.scale;
        let row = &mut self.v[k];
        for &(j, c) in x {
            row[j] += d * c;
        }
        if let Some(b) = bias_col {
            row[b] += d;
        }
    }
}

/// Crammer–Singer multiclass hinge loss minimized by Pegasos-style
/// stochastic subgradient steps with `lambda = 1 / (C n)`. The bias is a
/// constant extra feature. Visiting order comes from a seeded shuffle per
/// epoch, so results are reproducible.
fn pegasos_multiclass(
    design: &Design,
    labels: &[usize],
    n_labels: usize,
    c: f64,
    seed: u64,
    epochs: usize,
) -> (Vec<BTreeMap<String, f64>>, Vec<f64>) {
    let n = design.rows.len();
    let cols = design.names.len();
    let bias_col = Some(cols);
    let lambda = 1.0 / (c * n as f64);
    let mut w = ScaledWeights::new(n_labels, cols + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 0usize;
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let x = &design.rows[i];
            let y = labels[i];
            let scores: Vec<f64> = (0..n_labels).map(|k| w.score(k, x, bias_col)).collect();
            let rival = (0..n_labels)
                .filter(|&k| k != y)
                .fold(None, |best: Option<usize>, k| match best {
                    Some(b) if scores[b] >= scores[k] => Some(b),
                    _ => Some(k),
                });
            w.shrink(1.0 - eta * lambda);
            if let Some(r) = rival {
                if scores[y] - scores[r] < 1.0 {
                    w.add(y, x, bias_col, eta);
                    w.add(r, x, bias_col, -eta);
                }
            }
        }
    }
    let weights = (0..n_labels)
        .map(|k| design.to_map(&w.v[k][..cols], w.scale))
        .collect();
    let bias = (0..n_labels).map(|k| w.v[k][cols] * w.scale).collect();
    (weights, bias)
}

/// Binary hinge loss without a bias term, so an empty feature vector scores 0.
pub(crate) fn pegasos_binary(
    vectors: &[FeatureVector],
    targets: &[bool],
    c: f64,
    seed: u64,
    epochs: usize,
) -> BinaryModel {
    let design = Design::new(vectors);
    let n = design.rows.len();
    if n == 0 {
        return BinaryModel::default();
    }
    let lambda = 1.0 / (c * n as f64);
    let mut w = ScaledWeights::new(1, design.names.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 0usize;
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let x = &design.rows[i];
            let y = if targets[i] { 1.0 } else { -1.0 };
            let margin = y * w.score(0, x, None);
            w.shrink(1.0 - eta * lambda);
            if margin < 1.0 {
                w.add(0, x, None, eta * y);
            }
        }
    }
    BinaryModel {
        weights: design.to_map(&w.v[0], w.scale),
        bias: 0.0,
    }
}

/// Flags identical question texts that carry different labels.
fn conflicting_duplicates(examples: &[LabeledQuestion]) -> Vec<String> {
    let mut seen: BTreeMap<String, (&str, QuestionType)> = BTreeMap::new();
    let mut warnings = Vec::new();
    for ex in examples {
        let key = ex.text.trim().to_lowercase();
        match seen.get(&key) {
            Some(&(first_id, label)) if label != ex.qtype => warnings.push(format!(
                "question `{}` appears as {} ({}) and {} ({})",
                ex.text.trim(),
                label,
                first_id,
                ex.qtype,
                ex.id
            )),
            Some(_) => {}
            None => {
                seen.insert(key, (&ex.id, ex.qtype));
            }
        }
    }
    warnings
}

pub fn train_type_classifier(
    examples: &[LabeledQuestion],
    extractor: &FeatureExtractor,
    config: &TypeTrainConfig,
) -> Result<LinearModel> {
    if examples.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if !(config.c > 0.0 && config.c.is_finite()) {
        return Err(Error::Config(format!(
            "C must be positive, got {}",
            config.c
        )));
    }
    let present: BTreeSet<QuestionType> = examples.iter().map(|e| e.qtype).collect();
    let labels: Vec<QuestionType> = match &config.labels {
        Some(requested) => {
            let requested: BTreeSet<QuestionType> = requested.iter().copied().collect();
            if let Some(missing) = requested.iter().find(|l| !present.contains(l)) {
                return Err(Error::EmptyClass(*missing));
            }
            requested.into_iter().collect()
        }
        None => present.into_iter().collect(),
    };
    let warnings = conflicting_duplicates(examples);
    for w in &warnings {
        warn!("{w}");
    }

    let kept: Vec<&LabeledQuestion> = examples
        .iter()
        .filter(|e| labels.contains(&e.qtype))
        .collect();
    let vectors: Vec<FeatureVector> = kept
        .iter()
        .map(|e| extractor.extract(&e.text, config.space))
        .collect();
    let targets: Vec<usize> = kept
        .iter()
        .map(|e| {
            labels
                .iter()
                .position(|&l| l == e.qtype)
                .expect("label kept")
        })
        .collect();
    let design = Design::new(&vectors);
    let (weights, bias) = pegasos_multiclass(
        &design,
        &targets,
        labels.len(),
        config.c,
        config.seed,
        config.epochs,
    );
    Ok(LinearModel {
        version: MODEL_VERSION,
        labels,
        weights,
        bias,
        meta: TrainingMeta {
            space: config.space,
            c: config.c,
            seed: config.seed,
            epochs: config.epochs,
            examples: kept.len(),
            warnings,
        },
    })
}

pub fn classify_type(
    model: &LinearModel,
    extractor: &FeatureExtractor,
    question: &str,
) -> QuestionType {
    model.predict(&extractor.extract(question, model.meta.space))
}
