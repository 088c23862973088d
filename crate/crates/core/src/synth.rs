//! Stochastic block model networks with community-flavoured text, emitted in
//! the edge, content and label file formats.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SynthConfig {
    pub nodes: usize,
    pub communities: usize,
    /// Edge probability for an ordered pair inside one community.
    pub p_in: f64,
    /// Edge probability for an ordered pair across communities.
    pub p_out: f64,
    pub docs_per_node: usize,
    pub sentences_per_doc: usize,
    /// Inclusive range of words per sentence.
    pub sentence_len: (usize, usize),
    pub vocab_per_community: usize,
    pub vocab_shared: usize,
    /// Probability that a word comes from the node's community vocabulary.
    pub content_signal: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            nodes: 200,
            communities: 2,
            p_in: 0.05,
            p_out: 0.005,
            docs_per_node: 3,
            sentences_per_doc: 2,
            sentence_len: (4, 10),
            vocab_per_community: 50,
            vocab_shared: 200,
            content_signal: 0.5,
            seed: 1,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_owned()));
        if self.nodes < 2 {
            return bad("nodes must be at least 2");
        }
        if self.communities == 0 || self.communities > self.nodes {
            return bad("communities must be in [1, nodes]");
        }
        if !(0.0 <= self.p_out && self.p_out <= self.p_in && self.p_in <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "need 0 <= p_out <= p_in <= 1, got p_in={} p_out={}",
                self.p_in, self.p_out
            )));
        }
        if !(0.0..=1.0).contains(&self.content_signal) {
            return bad("content_signal must lie in [0, 1]");
        }
        let (lo, hi) = self.sentence_len;
        if lo == 0 || lo > hi {
            return bad("sentence length range must satisfy 1 <= min <= max");
        }
        if self.docs_per_node > 0 && self.sentences_per_doc == 0 {
            return bad("sentences_per_doc must be >= 1");
        }
        if self.vocab_shared == 0 && self.content_signal < 1.0 {
            return bad("vocab_shared must be >= 1 unless content_signal = 1");
        }
        if self.vocab_per_community == 0 && self.content_signal > 0.0 {
            return bad("vocab_per_community must be >= 1 unless content_signal = 0");
        }
        Ok(())
    }

    pub fn community_of(&self, node: usize) -> usize {
        node % self.communities
    }
}

pub fn node_key(i: usize) -> String {
    format!("n{i}")
}

pub fn label_name(k: usize) -> String {
    format!("c{k}")
}

pub fn community_word(k: usize, j: usize) -> String {
    format!("k{k}w{j}")
}

pub fn shared_word(j: usize) -> String {
    format!("s{j}")
}

/// File contents of a generated network.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthNetwork {
    pub edges: String,
    pub contents: String,
    pub labels: String,
    pub edge_count: usize,
    pub document_count: usize,
    pub communities: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SynthPaths {
    pub edges: PathBuf,
    pub contents: PathBuf,
    pub labels: PathBuf,
}

pub fn generate(config: &SynthConfig) -> Result<SynthNetwork> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let communities: Vec<usize> = (0..config.nodes).map(|i| config.community_of(i)).collect();

    let mut edges = String::new();
    let mut edge_count = 0;
    for u in 0..config.nodes {
        for v in 0..config.nodes {
            if u == v {
                continue;
            }
            let p = if communities[u] == communities[v] {
                config.p_in
            } else {
                config.p_out
            };
            if rng.random_bool(p) {
                writeln!(edges, "{}\t{}", node_key(u), node_key(v)).unwrap();
                edge_count += 1;
            }
        }
    }

    let mut contents = String::new();
    let mut document_count = 0;
    for (u, &k) in communities.iter().enumerate() {
        for _ in 0..config.docs_per_node {
            let sentences: Vec<String> = (0..config.sentences_per_doc)
                .map(|_| {
                    let len = rng.random_range(config.sentence_len.0..=config.sentence_len.1);
                    (0..len)
                        .map(|_| {
                            if rng.random_bool(config.content_signal) {
                                community_word(k, rng.random_range(0..config.vocab_per_community))
                            } else {
                                shared_word(rng.random_range(0..config.vocab_shared))
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            writeln!(contents, "{}\t{}.", node_key(u), sentences.join(". ")).unwrap();
            document_count += 1;
        }
    }

    let mut labels = String::new();
    for (u, &k) in communities.iter().enumerate() {
        writeln!(labels, "{}\t{}", node_key(u), label_name(k)).unwrap();
    }

    Ok(SynthNetwork {
        edges,
        contents,
        labels,
        edge_count,
        document_count,
        communities,
    })
}

impl SynthNetwork {
    /// Writes `edges.tsv`, `contents.tsv` and `labels.tsv` into `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>) -> Result<SynthPaths> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let paths = SynthPaths {
            edges: dir.join("edges.tsv"),
            contents: dir.join("contents.tsv"),
            labels: dir.join("labels.tsv"),
        };
        for (path, text) in [
            (&paths.edges, &self.edges),
            (&paths.contents, &self.contents),
            (&paths.labels, &self.labels),
        ] {
            fs::write(path, text).map_err(|e| Error::io(path, e))?;
        }
        Ok(paths)
    }
}
