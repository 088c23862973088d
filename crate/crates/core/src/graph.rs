//! Ingestion of edge and content files into an augmented network where every
//! sentence of a node's documents becomes a content node of its own.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};

/// Dense vertex index in `[0, node_count)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

/// Dense content (sentence) index in `[0, content_count)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContentId(pub usize);

pub type WordId = u32;

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl ContentId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characters that terminate a sentence, ASCII and full-width.
pub const SENTENCE_TERMINATORS: [char; 6] = ['.', '!', '?', '。', '！', '？'];

/// Interns string node keys to dense [`NodeId`]s in first-seen order.
#[derive(Clone, Debug, Default)]
pub struct NodeIndex {
    keys: Vec<String>,
    ids: HashMap<String, NodeId>,
}

impl NodeIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, key: &str) -> NodeId {
        if let Some(&id) = self.ids.get(key) {
            return id;
        }
        let id = NodeId(self.keys.len());
        self.keys.push(key.to_owned());
        self.ids.insert(key.to_owned(), id);
        id
    }

    pub fn get(&self, key: &str) -> Option<NodeId> {
        self.ids.get(key).copied()
    }

    pub fn key(&self, id: NodeId) -> &str {
        &self.keys[id.0]
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Word/id bijection with occurrence counts.
///
/// Id 0 is a padding sentinel and id 1 stands for every word below the
/// minimum count; neither is a real word.
#[derive(Clone, Debug)]
pub struct Vocabulary {
    words: Vec<String>,
    counts: Vec<u64>,
    ids: HashMap<String, WordId>,
}

impl Vocabulary {
    pub const PAD: WordId = 0;
    pub const UNK: WordId = 1;
    pub const PAD_TOKEN: &'static str = "<pad>";
    pub const UNK_TOKEN: &'static str = "<unk>";

    pub fn new() -> Self {
        let words = vec![Self::PAD_TOKEN.to_owned(), Self::UNK_TOKEN.to_owned()];
        let ids = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as WordId))
            .collect();
        Vocabulary {
            words,
            counts: vec![0, 0],
            ids,
        }
    }

    /// Builds a vocabulary from word counts, keeping words with
    /// `count >= min_count` in the given order.
    pub fn from_counts<'a, I>(ordered: I, min_count: u64) -> Self
    where
        I: IntoIterator<Item = (&'a str, u64)>,
    {
        let mut vocab = Vocabulary::new();
        for (word, count) in ordered {
            if count >= min_count.max(1) {
                vocab.insert(word, count);
            } else {
                vocab.counts[Self::UNK as usize] += count;
            }
        }
        vocab
    }

    fn insert(&mut self, word: &str, count: u64) -> WordId {
        if let Some(&id) = self.ids.get(word) {
            self.counts[id as usize] += count;
            return id;
        }
        let id = self.words.len() as WordId;
        self.words.push(word.to_owned());
        self.counts.push(count);
        self.ids.insert(word.to_owned(), id);
        id
    }

    /// Id for `word`, or UNK when the word was not kept.
    pub fn lookup(&self, word: &str) -> WordId {
        self.ids.get(word).copied().unwrap_or(Self::UNK)
    }

    /// Id for `word` only if it is a kept real word.
    pub fn get(&self, word: &str) -> Option<WordId> {
        self.ids.get(word).copied().filter(|&id| id > Self::UNK)
    }

    pub fn word(&self, id: WordId) -> &str {
        &self.words[id as usize]
    }

    pub fn count(&self, id: WordId) -> u64 {
        self.counts[id as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of ids including the two reserved ones.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.len() <= 2
    }

    pub fn words(&self) -> impl Iterator<Item = (WordId, &str)> {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| (i as WordId, w.as_str()))
    }
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::new()
    }
}

/// Non-empty word-id sequence that never contains the padding id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence(Vec<WordId>);

impl Sentence {
    pub fn new(tokens: Vec<WordId>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptyInput("sentence".into()));
        }
        if tokens.contains(&Vocabulary::PAD) {
            return Err(Error::Degenerate("sentence contains the padding id".into()));
        }
        Ok(Sentence(tokens))
    }

    pub fn tokens(&self) -> &[WordId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Splits a document on terminal punctuation, lowercases and splits on
/// whitespace. Sentences without tokens are dropped.
pub fn split_sentences(document: &str) -> Vec<Vec<String>> {
    document
        .split(|c| SENTENCE_TERMINATORS.contains(&c))
        .map(|s| {
            s.split_whitespace()
                .map(str::to_lowercase)
                .collect::<Vec<_>>()
        })
        .filter(|tokens| !tokens.is_empty())
        .collect()
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Reads a `src<TAB>dst` edge list. Undirected input is expanded into two
/// opposite directed edges; self-loops and duplicates are dropped.
pub fn load_edges(
    path: impl AsRef<Path>,
    directed: bool,
    nodes: &mut NodeIndex,
) -> Result<Vec<(NodeId, NodeId)>> {
    let path = path.as_ref();
    read_edges(open(path)?, &path.display().to_string(), directed, nodes)
}

pub fn read_edges<R: BufRead>(
    reader: R,
    source: &str,
    directed: bool,
    nodes: &mut NodeIndex,
) -> Result<Vec<(NodeId, NodeId)>> {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut data_lines = 0usize;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(source, e))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        data_lines += 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 || fields.iter().any(|f| f.is_empty()) {
            return Err(Error::parse(
                source,
                i + 1,
                format!("expected `src<TAB>dst`, found {} field(s)", fields.len()),
            ));
        }
        let u = nodes.intern(fields[0]);
        let v = nodes.intern(fields[1]);
        if u == v {
            continue;
        }
        let mut push = |a: NodeId, b: NodeId| {
            if seen.insert((a, b)) {
                edges.push((a, b));
            }
        };
        push(u, v);
        if !directed {
            push(v, u);
        }
    }
    if data_lines == 0 {
        return Err(Error::EmptyInput(format!("edge file {source}")));
    }
    Ok(edges)
}

/// Tokenized documents, one entry per sentence.
#[derive(Clone, Debug)]
pub struct ContentCorpus {
    pub vocab: Vocabulary,
    pub sentences: Vec<(NodeId, Sentence)>,
    /// Lines whose document text was empty.
    pub skipped_empty: usize,
}

impl ContentCorpus {
    pub fn empty() -> Self {
        ContentCorpus {
            vocab: Vocabulary::new(),
            sentences: Vec::new(),
            skipped_empty: 0,
        }
    }
}

/// Reads a `node_key<TAB>document` file. Node keys not seen in the edge file
/// become isolated nodes.
pub fn load_contents(
    path: impl AsRef<Path>,
    vocab_min_count: u64,
    nodes: &mut NodeIndex,
) -> Result<ContentCorpus> {
    let path = path.as_ref();
    read_contents(
        open(path)?,
        &path.display().to_string(),
        vocab_min_count,
        nodes,
    )
}

pub fn read_contents<R: BufRead>(
    reader: R,
    source: &str,
    vocab_min_count: u64,
    nodes: &mut NodeIndex,
) -> Result<ContentCorpus> {
    let mut raw: Vec<(NodeId, Vec<String>)> = Vec::new();
    let mut order: Vec<String> = Vec::new();
    let mut counts: HashMap<String, u64> = HashMap::new();
    let mut skipped_empty = 0;

    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(source, e))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, text)) = line.split_once('\t') else {
            return Err(Error::parse(source, i + 1, "expected `node_key<TAB>document`"));
        };
        if key.is_empty() {
            return Err(Error::parse(source, i + 1, "empty node key"));
        }
        let node = nodes.intern(key);
        if text.trim().is_empty() {
            skipped_empty += 1;
            continue;
        }
        for tokens in split_sentences(text) {
            for t in &tokens {
                match counts.get_mut(t) {
                    Some(c) => *c += 1,
                    None => {
                        counts.insert(t.clone(), 1);
                        order.push(t.clone());
                    }
                }
            }
            raw.push((node, tokens));
        }
    }
    if skipped_empty > 0 {
        log::warn!("{source}: skipped {skipped_empty} line(s) with empty text");
    }

    let vocab = Vocabulary::from_counts(
        order.iter().map(|w| (w.as_str(), counts[w])),
        vocab_min_count,
    );
    let sentences = raw
        .into_iter()
        .map(|(node, tokens)| {
            let ids = tokens.iter().map(|t| vocab.lookup(t)).collect();
            Ok((node, Sentence::new(ids)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContentCorpus {
        vocab,
        sentences,
        skipped_empty,
    })
}

/// The original graph plus one node per distinct sentence and the bipartite
/// node–sentence edges. Immutable once built.
#[derive(Clone, Debug)]
pub struct AugmentedNetwork {
    nodes: NodeIndex,
    vocab: Vocabulary,
    contents: Vec<Sentence>,
    edges_nn: Vec<(NodeId, NodeId)>,
    edges_nc: Vec<(NodeId, ContentId)>,
    adjacency_nn: Vec<Vec<NodeId>>,
    adjacency_nc: Vec<Vec<ContentId>>,
    in_degree: Vec<usize>,
    attachments: Vec<usize>,
}

/// Assembles the augmented network. Sentences with identical token
/// sequences share one [`ContentId`] even across nodes.
pub fn build_augmented(
    nodes: NodeIndex,
    edges: Vec<(NodeId, NodeId)>,
    corpus: ContentCorpus,
) -> Result<AugmentedNetwork> {
    let node_count = nodes.len();
    let mut adjacency_nn = vec![Vec::new(); node_count];
    let mut in_degree = vec![0; node_count];
    let mut edges_nn = Vec::with_capacity(edges.len());
    let mut seen_nn = HashSet::with_capacity(edges.len());
    for (u, v) in edges {
        if u.0 >= node_count || v.0 >= node_count {
            return Err(Error::Degenerate(format!("edge ({u}, {v}) out of range")));
        }
        if u == v || !seen_nn.insert((u, v)) {
            continue;
        }
        edges_nn.push((u, v));
        adjacency_nn[u.0].push(v);
        in_degree[v.0] += 1;
    }

    let mut interned: HashMap<Sentence, ContentId> = HashMap::new();
    let mut contents = Vec::new();
    let mut edges_nc = Vec::new();
    let mut seen_nc = HashSet::new();
    let mut adjacency_nc = vec![Vec::new(); node_count];
    for (u, sentence) in corpus.sentences {
        if u.0 >= node_count {
            return Err(Error::Degenerate(format!("content owner {u} out of range")));
        }
        if let Some(&bad) = sentence.tokens().iter().find(|&&w| w as usize >= corpus.vocab.len()) {
            return Err(Error::Degenerate(format!("word id {bad} outside the vocabulary")));
        }
        let c = *interned.entry(sentence).or_insert_with_key(|s| {
            contents.push(s.clone());
            ContentId(contents.len() - 1)
        });
        if seen_nc.insert((u, c)) {
            edges_nc.push((u, c));
            adjacency_nc[u.0].push(c);
        }
    }
    let mut attachments = vec![0; contents.len()];
    for &(_, c) in &edges_nc {
        attachments[c.0] += 1;
    }
    for adj in &mut adjacency_nn {
        adj.sort_unstable();
    }
    for adj in &mut adjacency_nc {
        adj.sort_unstable();
    }

    Ok(AugmentedNetwork {
        nodes,
        vocab: corpus.vocab,
        contents,
        edges_nn,
        edges_nc,
        adjacency_nn,
        adjacency_nc,
        in_degree,
        attachments,
    })
}

impl AugmentedNetwork {
    /// Loads the edge file and, if given, the content file.
    pub fn load(
        edge_path: impl AsRef<Path>,
        content_path: Option<&Path>,
        directed: bool,
        vocab_min_count: u64,
    ) -> Result<Self> {
        let mut nodes = NodeIndex::new();
        let edges = load_edges(edge_path, directed, &mut nodes)?;
        let corpus = match content_path {
            Some(p) => load_contents(p, vocab_min_count, &mut nodes)?,
            None => ContentCorpus::empty(),
        };
        build_augmented(nodes, edges, corpus)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn content_count(&self) -> usize {
        self.contents.len()
    }

    pub fn nodes(&self) -> &NodeIndex {
        &self.nodes
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn sentence(&self, c: ContentId) -> &Sentence {
        &self.contents[c.0]
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.contents
    }

    pub fn edges_nn(&self) -> &[(NodeId, NodeId)] {
        &self.edges_nn
    }

    pub fn edges_nc(&self) -> &[(NodeId, ContentId)] {
        &self.edges_nc
    }

    /// Sorted out-neighbours of `u`.
    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency_nn[u.0]
    }

    /// Sorted contents attached to `u`.
    pub fn contents_of(&self, u: NodeId) -> &[ContentId] {
        &self.adjacency_nc[u.0]
    }

    pub fn has_edge_nn(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency_nn[u.0].binary_search(&v).is_ok()
    }

    pub fn has_edge_nc(&self, u: NodeId, c: ContentId) -> bool {
        self.adjacency_nc[u.0].binary_search(&c).is_ok()
    }

    pub fn in_degrees(&self) -> &[usize] {
        &self.in_degree
    }

    /// Number of nodes each content is attached to.
    pub fn attachment_counts(&self) -> &[usize] {
        &self.attachments
    }
}
