//! Node classification: repeated random label splits, multinomial logistic
//! regression on standardized embeddings, Micro-F1.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::params::EmbeddingFile;

pub const DEFAULT_RATIOS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
pub const DEFAULT_TRIALS: usize = 40;
pub const DEFAULT_LAMBDA: f64 = 1.0;
pub const DEFAULT_ITERS: usize = 500;
const MAX_RESAMPLES: usize = 100;

/// Node keys paired with dense label ids.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSet {
    entries: Vec<(String, usize)>,
    labels: Vec<String>,
}

impl LabeledSet {
    pub fn new(entries: Vec<(String, String)>) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_ids: HashMap<String, usize> = HashMap::new();
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(entries.len());
        for (key, label) in entries {
            if seen.insert(key.clone(), ()).is_some() {
                return Err(Error::Degenerate(format!("node '{key}' is labeled more than once")));
            }
            let id = *label_ids.entry(label.clone()).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            });
            out.push((key, id));
        }
        if labels.len() < 2 {
            return Err(Error::Degenerate("at least two distinct labels are required".into()));
        }
        Ok(LabeledSet {
            entries: out,
            labels,
        })
    }

    pub fn entries(&self) -> &[(String, usize)] {
        &self.entries
    }

    pub fn label_names(&self) -> &[String] {
        &self.labels
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reads `node_key<TAB>label` lines.
pub fn load_labels(path: impl AsRef<Path>) -> Result<LabeledSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_labels(BufReader::new(file), &path.display().to_string())
}

pub fn parse_labels<R: BufRead>(reader: R, source: &str) -> Result<LabeledSet> {
    let mut entries = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(source, e))?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split('\t').collect::<Vec<_>>().as_slice() {
            [key, label] if !key.is_empty() && !label.is_empty() => {
                entries.push((key.to_string(), label.to_string()))
            }
            _ => return Err(Error::parse(source, i + 1, "expected `node_key<TAB>label`")),
        }
    }
    LabeledSet::new(entries)
}

/// Random partition of `labels` indices into train and test. The train side
/// has `round(ratio * n)` items and must contain every label present.
pub fn split<R: Rng + ?Sized>(
    rng: &mut R,
    labels: &[usize],
    ratio: f64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidConfig(format!("ratio must lie in (0, 1), got {ratio}")));
    }
    let n = labels.len();
    let n_train = (ratio * n as f64).round() as usize;
    if n_train == 0 || n_train >= n {
        return Err(Error::Degenerate(format!(
            "ratio {ratio} on {n} labeled nodes leaves one side empty"
        )));
    }
    let num_labels = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut present = vec![false; num_labels];
    labels.iter().for_each(|&l| present[l] = true);

    for _ in 0..MAX_RESAMPLES {
        let chosen = sample(rng, n, n_train).into_vec();
        let mut in_train = vec![false; n];
        let mut covered = vec![false; num_labels];
        for &i in &chosen {
            in_train[i] = true;
            covered[labels[i]] = true;
        }
        if covered == present {
            let test = (0..n).filter(|&i| !in_train[i]).collect();
            return Ok((chosen, test));
        }
    }
    Err(Error::Degenerate(format!(
        "no split at ratio {ratio} covered every label after {MAX_RESAMPLES} attempts"
    )))
}

/// Per-dimension mean/scale fitted on training rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Standardizer {
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[&[f64]]) -> Self {
        let d = rows.first().map_or(0, |r| r.len());
        let n = rows.len().max(1) as f64;
        let mut mean = vec![0.0; d];
        for r in rows {
            for (m, x) in mean.iter_mut().zip(r.iter()) {
                *m += x / n;
            }
        }
        let mut var = vec![0.0; d];
        for r in rows {
            for ((v, x), m) in var.iter_mut().zip(r.iter()).zip(&mean) {
                *v += (x - m).powi(2) / n;
            }
        }
        let scale = var
            .into_iter()
            .map(|v| if v > 1e-24 { v.sqrt() } else { 1.0 })
            .collect();
        Standardizer { mean, scale }
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((x, m), s)| (x - m) / s)
            .collect()
    }
}

/// Softmax regression `p(y | x) ∝ exp(W x + b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogRegModel {
    pub weights: Matrix,
    pub bias: Vec<f64>,
    pub lambda: f64,
}

impl LogRegModel {
    pub fn num_labels(&self) -> usize {
        self.weights.rows()
    }

    fn logits(&self, x: &[f64]) -> Vec<f64> {
        let mut z = self.bias.clone();
        self.weights.mul_vec_add(x, &mut z);
        z
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.logits(x))
    }

    pub fn predict_all(&self, rows: &[Vec<f64>]) -> Vec<usize> {
        rows.iter().map(|r| self.predict(r)).collect()
    }
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

fn softmax_in_place(z: &mut [f64]) {
    let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut s = 0.0;
    for v in z.iter_mut() {
        *v = (*v - m).exp();
        s += *v;
    }
    z.iter_mut().for_each(|v| *v /= s);
}

/// `(1/n) Σ CE + (λ / 2n) ‖W‖²`; the bias is not penalized.
pub fn logreg_objective(model: &LogRegModel, features: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = features.len() as f64;
    let mut ce = 0.0;
    for (x, &y) in features.iter().zip(labels) {
        let z = model.logits(x);
        let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = m + z.iter().map(|v| (v - m).exp()).sum::<f64>().ln();
        ce += lse - z[y];
    }
    let reg = crate::linalg::norm_sq(model.weights.as_slice());
    ce / n + model.lambda * reg / (2.0 * n)
}

/// Gradient of [`logreg_objective`] as `(dW, db)`.
pub fn logreg_gradient(
    model: &LogRegModel,
    features: &[Vec<f64>],
    labels: &[usize],
) -> (Matrix, Vec<f64>) {
    let n = features.len() as f64;
    let k = model.num_labels();
    let d = model.weights.cols();
    let mut gw = Matrix::zeros(k, d);
    let mut gb = vec![0.0; k];
    for (x, &y) in features.iter().zip(labels) {
        let mut p = model.logits(x);
        softmax_in_place(&mut p);
        p[y] -= 1.0;
        p.iter_mut().for_each(|v| *v /= n);
        gw.add_outer(1.0, &p, x);
        crate::linalg::axpy(1.0, &p, &mut gb);
    }
    crate::linalg::axpy(model.lambda / n, model.weights.as_slice(), gw.as_mut_slice());
    (gw, gb)
}

/// Objective values of accepted iterations, first entry at initialization.
#[derive(Clone, Debug, Default)]
pub struct FitHistory {
    pub objective: Vec<f64>,
}

/// Full-batch gradient descent with step halving until the objective
/// decreases. Starts from zero weights.
pub fn fit_logreg(
    features: &[Vec<f64>],
    labels: &[usize],
    num_labels: usize,
    lambda: f64,
    iters: usize,
) -> Result<(LogRegModel, FitHistory)> {
    if features.is_empty() || features.len() != labels.len() {
        return Err(Error::Degenerate(format!(
            "{} feature rows for {} labels",
            features.len(),
            labels.len()
        )));
    }
    let d = features[0].len();
    if features.iter().any(|r| r.len() != d) {
        return Err(Error::Degenerate("feature rows differ in length".into()));
    }
    if features.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Degenerate("non-finite feature value".into()));
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= num_labels) {
        return Err(Error::Degenerate(format!("label id {bad} >= {num_labels}")));
    }
    let mut model = LogRegModel {
        weights: Matrix::zeros(num_labels, d),
        bias: vec![0.0; num_labels],
        lambda,
    };
    let mut history = FitHistory::default();
    let mut current = logreg_objective(&model, features, labels);
    history.objective.push(current);
    let mut step = 1.0;
    for _ in 0..iters {
        let (gw, gb) = logreg_gradient(&model, features, labels);
        let gnorm_sq = crate::linalg::norm_sq(gw.as_slice()) + crate::linalg::norm_sq(&gb);
        if gnorm_sq < 1e-20 {
            break;
        }
        let mut accepted = false;
        while step > 1e-12 {
            let mut trial = model.clone();
            crate::linalg::axpy(-step, gw.as_slice(), trial.weights.as_mut_slice());
            crate::linalg::axpy(-step, &gb, &mut trial.bias);
            let value = logreg_objective(&trial, features, labels);
            if value <= current - 1e-4 * step * gnorm_sq {
                model = trial;
                current = value;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        history.objective.push(current);
        step = (step * 2.0).min(1e3);
    }
    Ok((model, history))
}

/// Micro-averaged F1 over labels, `2ΣTP / (2ΣTP + ΣFP + ΣFN)`.
pub fn micro_f1(predictions: &[usize], gold: &[usize]) -> Result<f64> {
    if predictions.len() != gold.len() {
        return Err(Error::DimensionMismatch {
            expected: gold.len(),
            found: predictions.len(),
        });
    }
    if gold.is_empty() {
        return Err(Error::EmptyInput("gold label list".into()));
    }
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut fn_ = 0usize;
    for (&p, &g) in predictions.iter().zip(gold) {
        if p == g {
            tp += 1;
        } else {
            // The predicted label gains a false positive, the gold label a
            // false negative.
            fp += 1;
            fn_ += 1;
        }
    }
    let denom = 2 * tp + fp + fn_;
    Ok(if denom == 0 { 0.0 } else { 2.0 * tp as f64 / denom as f64 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub ratios: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub lambda: f64,
    pub iters: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            ratios: DEFAULT_RATIOS.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: 1,
            lambda: DEFAULT_LAMBDA,
            iters: DEFAULT_ITERS,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioResult {
    pub ratio: f64,
    pub mean_micro_f1: f64,
    pub std: f64,
    pub trials: usize,
    pub scores: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<RatioResult>,
}

impl EvalReport {
    pub fn at(&self, ratio: f64) -> Option<&RatioResult> {
        self.rows.iter().find(|r| (r.ratio - ratio).abs() < 1e-9)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "ratio,mean_micro_f1,std,trials")?;
        for r in &self.rows {
            writeln!(out, "{},{:.6},{:.6},{}", r.ratio, r.mean_micro_f1, r.std, r.trials)?;
        }
        Ok(())
    }
}

/// Runs `trials` independent split/fit/score rounds per ratio. Trials run
/// in parallel, each on its own RNG stream.
pub fn evaluate(
    embeddings: &EmbeddingFile,
    labeled: &LabeledSet,
    config: &EvalConfig,
) -> Result<EvalReport> {
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    let index: HashMap<&str, usize> = embeddings
        .rows
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (k.as_str(), i))
        .collect();
    let mut features: Vec<&[f64]> = Vec::with_capacity(labeled.len());
    for (key, _) in labeled.entries() {
        let &row = index
            .get(key.as_str())
            .ok_or_else(|| Error::MissingEmbedding(key.clone()))?;
        features.push(&embeddings.rows[row].1);
    }
    let labels: Vec<usize> = labeled.entries().iter().map(|&(_, l)| l).collect();

    let mut rows = Vec::with_capacity(config.ratios.len());
    for (ri, &ratio) in config.ratios.iter().enumerate() {
        let scores = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream((ri * config.trials + t) as u64);
                run_trial(&mut rng, &features, &labels, labeled.num_labels(), ratio, config)
            })
            .collect::<Result<Vec<f64>>>()?;
        let n = scores.len() as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let std = if scores.len() > 1 {
            (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        rows.push(RatioResult {
            ratio,
            mean_micro_f1: mean,
            std,
            trials: scores.len(),
            scores,
        });
    }
    Ok(EvalReport { rows })
}

fn run_trial<R: Rng>(
    rng: &mut R,
    features: &[&[f64]],
    labels: &[usize],
    num_labels: usize,
    ratio: f64,
    config: &EvalConfig,
) -> Result<f64> {
    let (train, test) = split(rng, labels, ratio)?;
    let train_rows: Vec<&[f64]> = train.iter().map(|&i| features[i]).collect();
    let standardizer = Standardizer::fit(&train_rows);
    let x_train: Vec<Vec<f64>> = train_rows.iter().map(|r| standardizer.apply(r)).collect();
    let y_train: Vec<usize> = train.iter().map(|&i| labels[i]).collect();
    let (model, _) = fit_logreg(&x_train, &y_train, num_labels, config.lambda, config.iters)?;
    let predictions: Vec<usize> = test
        .iter()
        .map(|&i| model.predict(&standardizer.apply(features[i])))
        .collect();
    let gold: Vec<usize> = test.iter().map(|&i| labels[i]).collect();
    micro_f1(&predictions, &gold)
}

/// Fraction of exact matches.
pub fn accuracy(predictions: &[usize], gold: &[usize]) -> f64 {
    let hits = predictions.iter().zip(gold).filter(|(p, g)| p == g).count();
    hits as f64 / gold.len().max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdcheck::{numeric_grad, rel_error};
    use proptest::prelude::*;
    use rand::Rng;
    use std::io::Cursor;

    #[test]
    fn half_split_of_ten() {
        let labels = vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (train, test) = split(&mut rng, &labels, 0.5).unwrap();
        assert_eq!((train.len(), test.len()), (5, 5));
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn degenerate_splits_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(split(&mut rng, &[0, 1, 0], 0.1).is_err());
        assert!(split(&mut rng, &[0, 1, 0], 1.0).is_err());
        // One train slot cannot cover two labels.
        assert!(split(&mut rng, &[0, 1, 0, 1], 0.25).is_err());
    }

    #[test]
    fn labels_file_parsing() {
        let set = parse_labels(Cursor::new("a\tx\nb\ty\nc\tx\n"), "l").unwrap();
        assert_eq!(set.num_labels(), 2);
        assert_eq!(set.entries()[2], ("c".to_owned(), 0));
        assert!(parse_labels(Cursor::new("a\tx\na\ty\n"), "l").is_err());
        assert!(parse_labels(Cursor::new("a\tx\nb\tx\n"), "l").is_err());
        assert!(matches!(
            parse_labels(Cursor::new("a\tx\nbad\n"), "l"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn separable_toy_set_is_fit_exactly() {
        let xs = vec![
            vec![-2.0, -1.0],
            vec![-1.5, -2.0],
            vec![-1.0, -1.2],
            vec![1.0, 1.5],
            vec![2.0, 1.0],
            vec![1.2, 2.2],
        ];
        let ys = vec![0, 0, 0, 1, 1, 1];
        let (model, history) = fit_logreg(&xs, &ys, 2, 1.0, 500).unwrap();
        assert_eq!(accuracy(&model.predict_all(&xs), &ys), 1.0);
        for w in history.objective.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn huge_lambda_predicts_majority() {
        let xs: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 - 4.5, (i % 3) as f64]).collect();
        let ys = vec![0, 0, 0, 0, 0, 0, 0, 1, 1, 1];
        let (model, _) = fit_logreg(&xs, &ys, 2, 1e6, 500).unwrap();
        assert!(model.weights.as_slice().iter().all(|w| w.abs() < 1e-3));
        assert!(model.predict_all(&xs).iter().all(|&p| p == 0));
    }

    #[test]
    fn non_finite_features_are_rejected() {
        let xs = vec![vec![1.0], vec![f64::NAN]];
        assert!(fit_logreg(&xs, &[0, 1], 2, 1.0, 10).is_err());
    }

    #[test]
    fn logreg_gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let xs: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..4).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let ys: Vec<usize> = (0..12).map(|i| i % 3).collect();
        let model = LogRegModel {
            weights: Matrix::uniform(3, 4, 0.7, &mut rng),
            bias: vec![0.1, -0.3, 0.2],
            lambda: 1.7,
        };
        let (gw, gb) = logreg_gradient(&model, &xs, &ys);
        let nw = numeric_grad(&model, |m| m.weights.as_mut_slice(), |m| logreg_objective(m, &xs, &ys));
        let nb = numeric_grad(&model, |m| m.bias.as_mut_slice(), |m| logreg_objective(m, &xs, &ys));
        assert!(rel_error(gw.as_slice(), &nw) < 1e-6);
        assert!(rel_error(&gb, &nb) < 1e-6);
    }

    #[test]
    fn micro_f1_examples() {
        assert_eq!(micro_f1(&[0, 1, 2], &[0, 1, 2]).unwrap(), 1.0);
        assert_eq!(micro_f1(&[1, 2, 0], &[0, 1, 2]).unwrap(), 0.0);
        assert_eq!(micro_f1(&[0, 1, 1, 1], &[0, 0, 1, 2]).unwrap(), 0.5);
        assert!(micro_f1(&[0], &[0, 1]).is_err());
    }

    proptest! {
        #[test]
        fn micro_f1_equals_accuracy(pairs in prop::collection::vec((0usize..5, 0usize..5), 1..60)) {
            let (p, g): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
            prop_assert!((micro_f1(&p, &g).unwrap() - accuracy(&p, &g)).abs() < 1e-15);
        }
    }

    fn clustered_embeddings(n: usize, seed: u64) -> (EmbeddingFile, Vec<(String, String)>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            let k = i % 3;
            let v: Vec<f64> = (0..4)
                .map(|j| if j == k { 1.5 } else { 0.0 } + rng.random_range(-1.0..1.0))
                .collect();
            rows.push((format!("n{i}"), v));
            labels.push((format!("n{i}"), format!("L{k}")));
        }
        (EmbeddingFile { dim: 4, rows }, labels)
    }

    #[test]
    fn evaluation_is_deterministic_and_bounded() {
        let (emb, labels) = clustered_embeddings(90, 1);
        let labeled = LabeledSet::new(labels).unwrap();
        let cfg = EvalConfig {
            ratios: vec![0.3, 0.7],
            trials: 6,
            ..EvalConfig::default()
        };
        let a = evaluate(&emb, &labeled, &cfg).unwrap();
        let b = evaluate(&emb, &labeled, &cfg).unwrap();
        assert_eq!(a, b);
        for r in &a.rows {
            assert!((0.0..=1.0).contains(&r.mean_micro_f1));
            assert!(r.mean_micro_f1 > 0.6);
            assert_eq!(r.trials, 6);
        }
    }

    #[test]
    fn label_permutation_does_not_change_scores() {
        let (emb, labels) = clustered_embeddings(60, 2);
        let labeled = LabeledSet::new(labels).unwrap();
        let features: Vec<&[f64]> = emb.rows.iter().map(|(_, v)| v.as_slice()).collect();
        let ys: Vec<usize> = labeled.entries().iter().map(|e| e.1).collect();
        let permuted: Vec<usize> = ys.iter().map(|&y| [2, 0, 1][y]).collect();
        let cfg = EvalConfig::default();
        for t in 0..8u64 {
            let score = |labels: &[usize]| {
                let mut rng = ChaCha8Rng::seed_from_u64(t);
                run_trial(&mut rng, &features, labels, 3, 0.5, &cfg).unwrap()
            };
            assert_eq!(score(&ys), score(&permuted));
        }
    }

    #[test]
    fn missing_embedding_names_the_node() {
        let (mut emb, labels) = clustered_embeddings(30, 4);
        emb.rows.retain(|(k, _)| k != "n7");
        let err = evaluate(&emb, &LabeledSet::new(labels).unwrap(), &EvalConfig::default())
            .unwrap_err();
        assert!(err.to_string().contains("n7"), "{err}");
    }

    #[test]
    fn uniform_rescaling_keeps_predictions() {
        let (emb, labels) = clustered_embeddings(45, 5);
        let labeled = LabeledSet::new(labels).unwrap();
        let ys: Vec<usize> = labeled.entries().iter().map(|e| e.1).collect();
        let fit_predict = |scale: f64| {
            let rows: Vec<Vec<f64>> = emb
                .rows
                .iter()
                .map(|(_, v)| v.iter().map(|x| x * scale).collect())
                .collect();
            let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
            let st = Standardizer::fit(&refs);
            let xs: Vec<Vec<f64>> = refs.iter().map(|r| st.apply(r)).collect();
            let (m, _) = fit_logreg(&xs, &ys, 3, 1.0, 200).unwrap();
            m.predict_all(&xs)
        };
        assert_eq!(fit_predict(1.0), fit_predict(37.5));
    }
}
