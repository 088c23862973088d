//! Learnable parameters: the node table with its in/out halves, the word
//! table, and recurrent encoder weights. Also the plain-text embedding format.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, NodeIndex, Vocabulary, WordId};
use crate::linalg::Matrix;

/// Sentence composition model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncoderKind {
    WAvg,
    Gru,
    BiGru,
}

impl EncoderKind {
    pub const ALL: [EncoderKind; 3] = [EncoderKind::WAvg, EncoderKind::Gru, EncoderKind::BiGru];

    /// Initial learning rate used when none is given.
    pub fn default_eta0(self) -> f64 {
        match self {
            EncoderKind::WAvg => 0.025,
            EncoderKind::Gru | EncoderKind::BiGru => 0.01,
        }
    }
}

impl fmt::Display for EncoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncoderKind::WAvg => "wavg",
            EncoderKind::Gru => "gru",
            EncoderKind::BiGru => "bigru",
        })
    }
}

impl FromStr for EncoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wavg" => Ok(EncoderKind::WAvg),
            "gru" | "rnn" => Ok(EncoderKind::Gru),
            "bigru" | "birnn" => Ok(EncoderKind::BiGru),
            other => Err(Error::InvalidConfig(format!(
                "unknown encoder '{other}' (expected wavg, gru or bigru)"
            ))),
        }
    }
}

/// Row-major table of equally sized vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorTable {
    dim: usize,
    data: Vec<f64>,
}

impl VectorTable {
    pub fn zeros(len: usize, dim: usize) -> Self {
        VectorTable {
            dim,
            data: vec![0.0; len * dim],
        }
    }

    pub fn uniform<R: Rng>(len: usize, dim: usize, bound: f64, rng: &mut R) -> Self {
        let data = (0..len * dim)
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        VectorTable { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

/// Node vectors. Each row is `e_in ⊕ e_out`, both halves of width `dim / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeTable(VectorTable);

impl NodeTable {
    pub fn new(table: VectorTable) -> Result<Self> {
        check_even_dim(table.dim())?;
        Ok(NodeTable(table))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn half(&self) -> usize {
        self.0.dim() / 2
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vector(&self, u: NodeId) -> &[f64] {
        self.0.row(u.index())
    }

    pub fn vector_mut(&mut self, u: NodeId) -> &mut [f64] {
        self.0.row_mut(u.index())
    }

    pub fn in_half(&self, u: NodeId) -> &[f64] {
        &self.vector(u)[..self.half()]
    }

    pub fn out_half(&self, u: NodeId) -> &[f64] {
        &self.vector(u)[self.half()..]
    }

    pub fn in_half_mut(&mut self, u: NodeId) -> &mut [f64] {
        let h = self.half();
        &mut self.vector_mut(u)[..h]
    }

    pub fn out_half_mut(&mut self, u: NodeId) -> &mut [f64] {
        let h = self.half();
        &mut self.vector_mut(u)[h..]
    }

    /// `e_out ⊕ e_in`, the vector scored against sentences and used as
    /// classification features.
    pub fn concat_out_in(&self, u: NodeId) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.dim());
        v.extend_from_slice(self.out_half(u));
        v.extend_from_slice(self.in_half(u));
        v
    }

    pub fn table(&self) -> &VectorTable {
        &self.0
    }

    pub fn table_mut(&mut self) -> &mut VectorTable {
        &mut self.0
    }
}

fn check_even_dim(d: usize) -> Result<()> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "embedding dimension must be even and at least 2, got {d}"
        )));
    }
    Ok(())
}

pub type WordTable = VectorTable;

/// Weights of one GRU direction.
#[derive(Clone, Debug, PartialEq)]
pub struct GruWeights {
    pub w_z: Matrix,
    pub u_z: Matrix,
    pub b_z: Vec<f64>,
    pub w_r: Matrix,
    pub u_r: Matrix,
    pub b_r: Vec<f64>,
    pub w_h: Matrix,
    pub u_h: Matrix,
    pub b_h: Vec<f64>,
}

impl GruWeights {
    pub const TENSOR_NAMES: [&'static str; 9] =
        ["W_z", "U_z", "b_z", "W_r", "U_r", "b_r", "W_h", "U_h", "b_h"];

    pub fn zeros(input_dim: usize, hidden_dim: usize) -> Self {
        GruWeights {
            w_z: Matrix::zeros(hidden_dim, input_dim),
            u_z: Matrix::zeros(hidden_dim, hidden_dim),
            b_z: vec![0.0; hidden_dim],
            w_r: Matrix::zeros(hidden_dim, input_dim),
            u_r: Matrix::zeros(hidden_dim, hidden_dim),
            b_r: vec![0.0; hidden_dim],
            w_h: Matrix::zeros(hidden_dim, input_dim),
            u_h: Matrix::zeros(hidden_dim, hidden_dim),
            b_h: vec![0.0; hidden_dim],
        }
    }

    /// Fan-balanced uniform matrices, zero biases.
    pub fn random<R: Rng>(input_dim: usize, hidden_dim: usize, rng: &mut R) -> Self {
        let wb = (6.0 / (input_dim + hidden_dim) as f64).sqrt();
        let ub = (6.0 / (2 * hidden_dim) as f64).sqrt();
        GruWeights {
            w_z: Matrix::uniform(hidden_dim, input_dim, wb, rng),
            u_z: Matrix::uniform(hidden_dim, hidden_dim, ub, rng),
            b_z: vec![0.0; hidden_dim],
            w_r: Matrix::uniform(hidden_dim, input_dim, wb, rng),
            u_r: Matrix::uniform(hidden_dim, hidden_dim, ub, rng),
            b_r: vec![0.0; hidden_dim],
            w_h: Matrix::uniform(hidden_dim, input_dim, wb, rng),
            u_h: Matrix::uniform(hidden_dim, hidden_dim, ub, rng),
            b_h: vec![0.0; hidden_dim],
        }
    }

    pub fn zeros_like(&self) -> Self {
        GruWeights::zeros(self.input_dim(), self.hidden_dim())
    }

    pub fn input_dim(&self) -> usize {
        self.w_z.cols()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w_z.rows()
    }

    pub fn tensors(&self) -> [&[f64]; 9] {
        [
            self.w_z.as_slice(),
            self.u_z.as_slice(),
            &self.b_z,
            self.w_r.as_slice(),
            self.u_r.as_slice(),
            &self.b_r,
            self.w_h.as_slice(),
            self.u_h.as_slice(),
            &self.b_h,
        ]
    }

    pub fn tensors_mut(&mut self) -> [&mut [f64]; 9] {
        [
            self.w_z.as_mut_slice(),
            self.u_z.as_mut_slice(),
            &mut self.b_z,
            self.w_r.as_mut_slice(),
            self.u_r.as_mut_slice(),
            &mut self.b_r,
            self.w_h.as_mut_slice(),
            self.u_h.as_mut_slice(),
            &mut self.b_h,
        ]
    }

    /// `self += scale * other`
    pub fn add_scaled(&mut self, scale: f64, other: &GruWeights) {
        for (dst, src) in self.tensors_mut().into_iter().zip(other.tensors()) {
            crate::linalg::axpy(scale, src, dst);
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.tensors().iter().map(|t| crate::linalg::norm_sq(t)).sum()
    }

    pub fn all_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.iter().all(|x| x.is_finite()))
    }
}

/// Encoder-specific weights; WAvg has none.
#[derive(Clone, Debug, PartialEq)]
pub enum EncoderParams {
    WAvg,
    Gru(GruWeights),
    BiGru {
        forward: GruWeights,
        backward: GruWeights,
    },
}

impl EncoderParams {
    pub fn kind(&self) -> EncoderKind {
        match self {
            EncoderParams::WAvg => EncoderKind::WAvg,
            EncoderParams::Gru(_) => EncoderKind::Gru,
            EncoderParams::BiGru { .. } => EncoderKind::BiGru,
        }
    }

    pub fn directions(&self) -> Vec<&GruWeights> {
        match self {
            EncoderParams::WAvg => vec![],
            EncoderParams::Gru(w) => vec![w],
            EncoderParams::BiGru { forward, backward } => vec![forward, backward],
        }
    }

    pub fn directions_mut(&mut self) -> Vec<&mut GruWeights> {
        match self {
            EncoderParams::WAvg => vec![],
            EncoderParams::Gru(w) => vec![w],
            EncoderParams::BiGru { forward, backward } => vec![forward, backward],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub nodes: NodeTable,
    pub words: WordTable,
    pub encoder: EncoderParams,
    pub freeze_words: bool,
}

impl ModelParams {
    pub fn dim(&self) -> usize {
        self.nodes.dim()
    }

    pub fn all_finite(&self) -> bool {
        self.nodes.table().all_finite()
            && self.words.all_finite()
            && self.encoder.directions().iter().all(|w| w.all_finite())
    }
}

/// Initializes every parameter deterministically from `seed`.
///
/// Node and word vectors are uniform in `[-0.5/d, 0.5/d]`; the padding word
/// row is zero.
pub fn init_params(
    node_count: usize,
    vocab_size: usize,
    d: usize,
    kind: EncoderKind,
    seed: u64,
) -> Result<ModelParams> {
    check_even_dim(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 0.5 / d as f64;
    let nodes = NodeTable::new(VectorTable::uniform(node_count, d, bound, &mut rng))?;
    let mut words = VectorTable::uniform(vocab_size, d, bound, &mut rng);
    if vocab_size > 0 {
        words.row_mut(Vocabulary::PAD as usize).fill(0.0);
    }
    let encoder = match kind {
        EncoderKind::WAvg => EncoderParams::WAvg,
        EncoderKind::Gru => EncoderParams::Gru(GruWeights::random(d, d, &mut rng)),
        EncoderKind::BiGru => EncoderParams::BiGru {
            forward: GruWeights::random(d, d / 2, &mut rng),
            backward: GruWeights::random(d, d / 2, &mut rng),
        },
    };
    Ok(ModelParams {
        nodes,
        words,
        encoder,
        freeze_words: false,
    })
}

/// Which part of each node vector to export.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingPart {
    /// `e_out ⊕ e_in`
    Full,
    In,
    Out,
}

impl FromStr for EmbeddingPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(EmbeddingPart::Full),
            "in" => Ok(EmbeddingPart::In),
            "out" => Ok(EmbeddingPart::Out),
            other => Err(Error::InvalidConfig(format!(
                "unknown embedding part '{other}' (expected full, in or out)"
            ))),
        }
    }
}

/// Keyed vectors as read from the text format.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingFile {
    pub dim: usize,
    pub rows: Vec<(String, Vec<f64>)>,
}

impl EmbeddingFile {
    /// In-memory equivalent of [`export_embeddings`], without rounding.
    pub fn from_nodes(params: &ModelParams, nodes: &NodeIndex, which: EmbeddingPart) -> Self {
        let table = &params.nodes;
        let rows = nodes
            .keys()
            .iter()
            .enumerate()
            .map(|(i, key)| {
                let u = NodeId(i);
                let v = match which {
                    EmbeddingPart::Full => table.concat_out_in(u),
                    EmbeddingPart::In => table.in_half(u).to_vec(),
                    EmbeddingPart::Out => table.out_half(u).to_vec(),
                };
                (key.clone(), v)
            })
            .collect();
        let dim = match which {
            EmbeddingPart::Full => table.dim(),
            _ => table.half(),
        };
        EmbeddingFile { dim, rows }
    }
}

/// Writes `count dim` followed by one `key v1 ... v_dim` row per vector,
/// six decimals each.
pub fn write_embeddings<'a, W, I>(out: W, dim: usize, rows: I) -> std::io::Result<()>
where
    W: Write,
    I: ExactSizeIterator<Item = (&'a str, Vec<f64>)>,
{
    let mut out = BufWriter::new(out);
    writeln!(out, "{} {}", rows.len(), dim)?;
    for (key, values) in rows {
        debug_assert_eq!(values.len(), dim);
        out.write_all(key.as_bytes())?;
        for v in values {
            write!(out, " {v:.6}")?;
        }
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn export_embeddings(
    params: &ModelParams,
    nodes: &NodeIndex,
    path: impl AsRef<Path>,
    which: EmbeddingPart,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_node_embeddings(params, nodes, file, which).map_err(|e| Error::io(path, e))
}

pub fn write_node_embeddings<W: Write>(
    params: &ModelParams,
    nodes: &NodeIndex,
    out: W,
    which: EmbeddingPart,
) -> std::io::Result<()> {
    let table = &params.nodes;
    let dim = match which {
        EmbeddingPart::Full => table.dim(),
        EmbeddingPart::In | EmbeddingPart::Out => table.half(),
    };
    let rows = nodes.keys().iter().enumerate().map(|(i, key)| {
        let u = NodeId(i);
        let v = match which {
            EmbeddingPart::Full => table.concat_out_in(u),
            EmbeddingPart::In => table.in_half(u).to_vec(),
            EmbeddingPart::Out => table.out_half(u).to_vec(),
        };
        (key.as_str(), v)
    });
    write_embeddings(out, dim, rows)
}

/// Writes every real word of `vocab` (reserved ids excluded).
pub fn export_word_vectors(
    words: &WordTable,
    vocab: &Vocabulary,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let ids: Vec<(WordId, &str)> = vocab.words().filter(|&(id, _)| id > Vocabulary::UNK).collect();
    let rows = ids.iter().map(|&(id, w)| (w, words.row(id as usize).to_vec()));
    write_embeddings(file, words.dim(), rows).map_err(|e| Error::io(path, e))
}

pub fn read_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingFile> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_embeddings(BufReader::new(file), &path.display().to_string())
}

pub fn parse_embeddings<R: BufRead>(reader: R, source: &str) -> Result<EmbeddingFile> {
    let mut lines = reader.lines().enumerate();
    let (count, dim) = match lines.next() {
        None => return Err(Error::EmptyInput(format!("embedding file {source}"))),
        Some((_, header)) => {
            let header = header.map_err(|e| Error::io(source, e))?;
            let fields: Vec<&str> = header.split_whitespace().collect();
            let parse = |s: &str| s.parse::<usize>().ok();
            match fields.as_slice() {
                [c, d] => match (parse(c), parse(d)) {
                    (Some(c), Some(d)) if d > 0 => (c, d),
                    _ => return Err(Error::parse(source, 1, "header must be `count dim`")),
                },
                _ => return Err(Error::parse(source, 1, "header must be `count dim`")),
            }
        }
    };
    let mut rows = Vec::with_capacity(count);
    for (i, line) in lines {
        let line = line.map_err(|e| Error::io(source, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < dim + 1 {
            return Err(Error::parse(
                source,
                i + 1,
                format!("expected a key and {dim} values, found {} field(s)", fields.len()),
            ));
        }
        let split = fields.len() - dim;
        let key = fields[..split].join(" ");
        let values = fields[split..]
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(source, i + 1, format!("malformed float '{f}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((key, values));
    }
    if rows.len() != count {
        return Err(Error::parse(
            source,
            1,
            format!("header announces {count} rows but {} were read", rows.len()),
        ));
    }
    Ok(EmbeddingFile { dim, rows })
}

/// Outcome of merging pretrained vectors into a word table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WordLoadReport {
    pub loaded: usize,
    /// Rows whose word is not in the vocabulary.
    pub skipped: usize,
}

/// Overwrites rows of `table` for words found in the file; other rows keep
/// their current values.
pub fn load_word_vectors(
    path: impl AsRef<Path>,
    vocab: &Vocabulary,
    table: &mut WordTable,
) -> Result<WordLoadReport> {
    let file = read_embeddings(path)?;
    merge_word_vectors(&file, vocab, table)
}

pub fn merge_word_vectors(
    file: &EmbeddingFile,
    vocab: &Vocabulary,
    table: &mut WordTable,
) -> Result<WordLoadReport> {
    if file.dim != table.dim() {
        return Err(Error::DimensionMismatch {
            expected: table.dim(),
            found: file.dim,
        });
    }
    let mut report = WordLoadReport::default();
    for (word, values) in &file.rows {
        match vocab.get(word) {
            Some(id) if (id as usize) < table.len() => {
                table.row_mut(id as usize).copy_from_slice(values);
                report.loaded += 1;
            }
            _ => report.skipped += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn halves_have_width_d_over_two() {
        let p = init_params(3, 5, 200, EncoderKind::WAvg, 1).unwrap();
        assert_eq!(p.nodes.in_half(NodeId(0)).len(), 100);
        assert_eq!(p.nodes.out_half(NodeId(2)).len(), 100);
        let bound = 0.5 / 200.0;
        assert!(p.nodes.table().as_slice().iter().all(|x| x.abs() <= bound));
    }

    #[test]
    fn init_is_deterministic() {
        for kind in EncoderKind::ALL {
            let a = init_params(10, 7, 8, kind, 42).unwrap();
            let b = init_params(10, 7, 8, kind, 42).unwrap();
            assert_eq!(a, b);
            let c = init_params(10, 7, 8, kind, 43).unwrap();
            assert_ne!(a.nodes, c.nodes);
        }
    }

    #[test]
    fn odd_dimension_is_rejected() {
        assert!(matches!(
            init_params(2, 2, 3, EncoderKind::WAvg, 0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(init_params(2, 2, 0, EncoderKind::Gru, 0).is_err());
    }

    #[test]
    fn gru_shapes_follow_encoder_kind() {
        let p = init_params(1, 4, 6, EncoderKind::Gru, 0).unwrap();
        let dirs = p.encoder.directions();
        assert_eq!((dirs[0].input_dim(), dirs[0].hidden_dim()), (6, 6));
        let p = init_params(1, 4, 6, EncoderKind::BiGru, 0).unwrap();
        for w in p.encoder.directions() {
            assert_eq!((w.input_dim(), w.hidden_dim()), (6, 3));
            assert!(w.b_z.iter().all(|&b| b == 0.0));
            let bound = (6.0f64 / 9.0).sqrt();
            assert!(w.w_h.as_slice().iter().all(|x| x.abs() <= bound));
        }
    }

    #[test]
    fn header_count_must_match() {
        let ok = parse_embeddings(Cursor::new("2 4\na 1 2 3 4\nb 0 0 0 1\n"), "t").unwrap();
        assert_eq!(ok.rows.len(), 2);
        assert!(parse_embeddings(Cursor::new("3 4\na 1 2 3 4\n"), "t").is_err());
    }

    #[test]
    fn malformed_float_reports_line() {
        let err = parse_embeddings(Cursor::new("2 2\na 1 2\nb 1 x\n"), "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn word_vector_dim_mismatch_is_an_error() {
        let file = parse_embeddings(Cursor::new("1 100\n"
            .to_owned()
            + "w"
            + &" 0.1".repeat(100)
            + "\n"), "t")
        .unwrap();
        let mut table = VectorTable::zeros(3, 200);
        let vocab = Vocabulary::from_counts([("w", 1)], 1);
        assert!(matches!(
            merge_word_vectors(&file, &vocab, &mut table),
            Err(Error::DimensionMismatch { expected: 200, found: 100 })
        ));
    }

    #[test]
    fn unknown_words_are_skipped_and_counted() {
        let vocab = Vocabulary::from_counts([("a", 1), ("b", 1)], 1);
        let mut table = VectorTable::uniform(vocab.len(), 2, 0.1, &mut ChaCha8Rng::seed_from_u64(3));
        let before_b = table.row(3).to_vec();
        let file = parse_embeddings(Cursor::new("2 2\na 1 2\nzzz 3 4\n"), "t").unwrap();
        let report = merge_word_vectors(&file, &vocab, &mut table).unwrap();
        assert_eq!(report, WordLoadReport { loaded: 1, skipped: 1 });
        assert_eq!(table.row(2), &[1.0, 2.0]);
        assert_eq!(table.row(3), before_b.as_slice());
    }

    #[test]
    fn export_widths_and_order() {
        let mut nodes = NodeIndex::new();
        nodes.intern("x");
        nodes.intern("isolated");
        let mut p = init_params(2, 2, 4, EncoderKind::WAvg, 0).unwrap();
        p.nodes.vector_mut(NodeId(0)).copy_from_slice(&[1.0, 2.0, 3.0, 4.0]);
        let mut buf = Vec::new();
        write_node_embeddings(&p, &nodes, &mut buf, EmbeddingPart::Full).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("2 4"));
        assert_eq!(lines.next(), Some("x 3.000000 4.000000 1.000000 2.000000"));
        assert!(lines.next().unwrap().starts_with("isolated "));

        let mut buf = Vec::new();
        write_node_embeddings(&p, &nodes, &mut buf, EmbeddingPart::In).unwrap();
        let parsed = parse_embeddings(Cursor::new(buf), "t").unwrap();
        assert_eq!(parsed.dim, 2);
        assert_eq!(parsed.rows[0].1, vec![1.0, 2.0]);
    }
}
