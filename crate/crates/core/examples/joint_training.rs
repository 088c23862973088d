//! Pretrain word vectors, train node vectors jointly on structure and text,
//! then export them and the loss trace.
//!
//! ```text
//! cargo run --release --example joint_training -- gru out/
//! ```

use std::fs::File;
use std::io::Cursor;
use std::path::PathBuf;

use augnet::graph::{build_augmented, read_contents, read_edges};
use augnet::params::export_embeddings;
use augnet::pretrain::{pretrain_words, PretrainConfig};
use augnet::synth::{generate, SynthConfig};
use augnet::trainer::write_loss_csv;
use augnet::{init_params, train, EmbeddingPart, EncoderKind, NodeIndex, TrainConfig};

fn main() -> augnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: EncoderKind = args.next().as_deref().unwrap_or("wavg").parse()?;
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));

    let synth = generate(&SynthConfig {
        nodes: 300,
        p_in: 0.05,
        p_out: 0.01,
        content_signal: 0.6,
        ..SynthConfig::default()
    })?;
    let mut nodes = NodeIndex::new();
    let edges = read_edges(Cursor::new(&synth.edges), "edges", true, &mut nodes)?;
    let corpus = read_contents(Cursor::new(&synth.contents), "contents", 1, &mut nodes)?;
    let net = build_augmented(nodes, edges, corpus)?;

    let dim = if kind == EncoderKind::WAvg { 64 } else { 16 };
    let config = TrainConfig {
        dim,
        epochs: 10,
        trace_every: 2000,
        ..TrainConfig::new(kind)
    };
    let mut params = init_params(net.node_count(), net.vocab().len(), dim, kind, config.seed)?;
    // Recurrent encoders barely move from random tiny word vectors.
    let words = pretrain_words(
        net.sentences(),
        net.vocab(),
        &PretrainConfig {
            dim,
            ..PretrainConfig::default()
        },
        config.seed,
    )?;
    params.words = words.into_word_table();
    let outcome = train(&net, &mut params, &config)?;
    println!(
        "{} steps ({} node-node, {} node-content); loss {:.3} -> {:.3}",
        outcome.steps, outcome.nn_steps, outcome.nc_steps, outcome.first_decile_loss, outcome.last_decile_loss
    );

    let emb = out_dir.join(format!("nodes-{kind}.emb"));
    export_embeddings(&params, net.nodes(), &emb, EmbeddingPart::Full)?;
    let loss = out_dir.join(format!("loss-{kind}.csv"));
    let file = File::create(&loss).map_err(|e| augnet::Error::Io { path: loss.clone(), source: e })?;
    write_loss_csv(file, &outcome.trace).map_err(|e| augnet::Error::Io { path: loss.clone(), source: e })?;
    println!("wrote {} and {}", emb.display(), loss.display());
    Ok(())
}
