//! Skip-gram with negative sampling over the sentence corpus, used to
//! pretrain word vectors before joint training.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Sentence, Vocabulary, WordId};
use crate::linalg::{axpy, dot, log_sigmoid, sigmoid};
use crate::params::{VectorTable, WordTable};
use crate::sampler::{NegTable, NEG_POWER};

#[derive(Clone, Debug, PartialEq)]
pub struct PretrainConfig {
    pub window: usize,
    pub neg: usize,
    pub epochs: usize,
    pub eta0: f64,
    pub dim: usize,
    /// Frequent-word subsampling threshold; off when `None`.
    pub subsample: Option<f64>,
}

impl Default for PretrainConfig {
    fn default() -> Self {
        PretrainConfig {
            window: 5,
            neg: 15,
            epochs: 5,
            eta0: 0.025,
            dim: 200,
            subsample: None,
        }
    }
}

/// Input (word) and output (context) vectors after training.
#[derive(Clone, Debug, PartialEq)]
pub struct SkipGram {
    pub words: WordTable,
    pub contexts: WordTable,
    /// Mean loss per pair over the final epoch.
    pub final_loss: f64,
}

impl SkipGram {
    /// Pre-sigmoid score of `context` appearing near `word`.
    pub fn score(&self, word: WordId, context: WordId) -> f64 {
        dot(self.words.row(word as usize), self.contexts.row(context as usize))
    }

    pub fn into_word_table(self) -> WordTable {
        self.words
    }
}

/// Trains skip-gram vectors. Contexts never cross sentence boundaries.
pub fn pretrain_words(
    sentences: &[Sentence],
    vocab: &Vocabulary,
    config: &PretrainConfig,
    seed: u64,
) -> Result<SkipGram> {
    if config.window == 0 {
        return Err(Error::InvalidConfig("window must be >= 1".into()));
    }
    if config.dim == 0 || config.neg == 0 || !(config.eta0 > 0.0) {
        return Err(Error::InvalidConfig(
            "dim, neg and eta0 must be positive".into(),
        ));
    }
    let total_tokens: usize = sentences.iter().map(Sentence::len).sum();
    if total_tokens == 0 {
        return Err(Error::EmptyInput("pretraining corpus".into()));
    }

    let counts: Vec<usize> = vocab.counts().iter().map(|&c| c as usize).collect();
    let table = NegTable::from_counts(&counts, NEG_POWER)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 0.5 / config.dim as f64;
    let mut words = VectorTable::uniform(vocab.len(), config.dim, bound, &mut rng);
    words.row_mut(Vocabulary::PAD as usize).fill(0.0);
    let mut contexts = VectorTable::zeros(vocab.len(), config.dim);

    let corpus_total: u64 = vocab.counts().iter().sum();
    let keep_prob = |w: WordId| -> f64 {
        match config.subsample {
            None => 1.0,
            Some(t) => {
                let f = vocab.count(w) as f64 / corpus_total as f64;
                ((f / t).sqrt() + 1.0) * t / f
            }
        }
    };

    let planned = (config.epochs * total_tokens) as f64;
    let mut processed = 0usize;
    let mut final_loss = (0.0, 0usize);
    let mut grad_word = vec![0.0; config.dim];
    let mut kept: Vec<WordId> = Vec::new();
    for epoch in 0..config.epochs {
        let last_epoch = epoch + 1 == config.epochs;
        for sentence in sentences {
            kept.clear();
            kept.extend(
                sentence
                    .tokens()
                    .iter()
                    .copied()
                    .filter(|&w| config.subsample.is_none() || rng.random::<f64>() < keep_prob(w)),
            );
            for (i, &center) in kept.iter().enumerate() {
                let eta = (config.eta0 * (1.0 - processed as f64 / planned)).max(config.eta0 * 1e-4);
                processed += 1;
                let lo = i.saturating_sub(config.window);
                let hi = (i + config.window + 1).min(kept.len());
                for (j, &context) in kept.iter().enumerate().take(hi).skip(lo) {
                    if j == i {
                        continue;
                    }
                    grad_word.fill(0.0);
                    let mut loss = 0.0;
                    let negatives = (0..config.neg).map(|_| table.sample(&mut rng) as WordId);
                    let targets: Vec<(WordId, f64)> = std::iter::once((context, 1.0))
                        .chain(negatives.filter(|&n| n != context).map(|n| (n, 0.0)))
                        .collect();
                    for (target, label) in targets {
                        let s = dot(words.row(center as usize), contexts.row(target as usize));
                        loss -= if label > 0.0 { log_sigmoid(s) } else { log_sigmoid(-s) };
                        let g = eta * (label - sigmoid(s));
                        axpy(g, contexts.row(target as usize), &mut grad_word);
                        let center_row = words.row(center as usize).to_vec();
                        axpy(g, &center_row, contexts.row_mut(target as usize));
                    }
                    axpy(1.0, &grad_word, words.row_mut(center as usize));
                    if last_epoch {
                        final_loss.0 += loss;
                        final_loss.1 += 1;
                    }
                }
            }
        }
    }
    Ok(SkipGram {
        words,
        contexts,
        final_loss: final_loss.0 / final_loss.1.max(1) as f64,
    })
}
