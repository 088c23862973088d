//! Evaluate an embedding file against node labels across training ratios.
//!
//! ```text
//! cargo run --release --example node_classification -- nodes.emb labels.tsv
//! ```
//!
//! Without arguments, a small network is generated and trained first.

use std::io::Cursor;

use augnet::eval::{evaluate, load_labels, parse_labels, EvalConfig};
use augnet::graph::{build_augmented, read_contents, read_edges};
use augnet::params::{read_embeddings, EmbeddingFile};
use augnet::synth::{generate, SynthConfig};
use augnet::{init_params, train, EmbeddingPart, EncoderKind, NodeIndex, TrainConfig};

fn main() -> augnet::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (embeddings, labels) = match args.as_slice() {
        [emb, labels] => (read_embeddings(emb)?, load_labels(labels)?),
        _ => {
            let synth = generate(&SynthConfig {
                nodes: 200,
                ..SynthConfig::default()
            })?;
            let mut nodes = NodeIndex::new();
            let edges = read_edges(Cursor::new(&synth.edges), "edges", true, &mut nodes)?;
            let corpus = read_contents(Cursor::new(&synth.contents), "contents", 1, &mut nodes)?;
            let net = build_augmented(nodes, edges, corpus)?;
            let config = TrainConfig {
                dim: 32,
                epochs: 20,
                ..TrainConfig::new(EncoderKind::WAvg)
            };
            let mut params = init_params(net.node_count(), net.vocab().len(), 32, EncoderKind::WAvg, 1)?;
            train(&net, &mut params, &config)?;
            (
                EmbeddingFile::from_nodes(&params, net.nodes(), EmbeddingPart::Full),
                parse_labels(Cursor::new(&synth.labels), "labels")?,
            )
        }
    };
    let report = evaluate(
        &embeddings,
        &labels,
        &EvalConfig {
            trials: 10,
            ..EvalConfig::default()
        },
    )?;
    report.write_csv(std::io::stdout().lock()).expect("stdout");
    Ok(())
}
